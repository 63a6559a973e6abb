#include "partref/generator.hh"

#include <algorithm>
#include <cctype>
#include <limits>
#include <memory>

#include "partref/errors.hh"
#include "partref/random.hh"

namespace partref {

namespace {

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max() / 4;

bool is_numeral(const std::string& name) {
    return !name.empty() && std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::size_t saturating_add(std::size_t a, std::size_t b) { return std::min(kUnbounded, a + b); }
std::size_t saturating_mul(std::size_t a, std::size_t b) {
    if (a == 0 || b == 0) return 0;
    return a > kUnbounded / b ? kUnbounded : a * b;
}

class Generator {
public:
    Generator(const Coalgebra& sys, const GeneratorOptions& options)
        : sys_(sys), options_(options), rng_(options.seed) {}

    std::size_t min_cost(const FunctorTerm& t) const {
        switch (t.kind) {
            case TermKind::Argument: return 1;
            case TermKind::Const: return 0;
            case TermKind::Dist: return min_cost(t.children[0]);
            case TermKind::Powerset:
            case TermKind::Bag:
            case TermKind::IntGroup:
            case TermKind::RatGroup: return 0;
            case TermKind::Product: {
                std::size_t sum = 0;
                for (const FunctorTerm& c : t.children) sum = saturating_add(sum, min_cost(c));
                return sum;
            }
            case TermKind::Coproduct: {
                std::size_t best = kUnbounded;
                for (const FunctorTerm& c : t.children) best = std::min(best, min_cost(c));
                return best;
            }
            case TermKind::Exponent: return saturating_mul(letters(t), min_cost(t.children[0]));
        }
        return 0;
    }

    std::size_t max_cost(const FunctorTerm& t) const {
        switch (t.kind) {
            case TermKind::Argument: return 1;
            case TermKind::Const: return 0;
            case TermKind::Powerset:
            case TermKind::Bag:
            case TermKind::Dist:
            case TermKind::IntGroup:
            case TermKind::RatGroup: return max_cost(t.children[0]) > 0 ? kUnbounded : 0;
            case TermKind::Product: {
                std::size_t sum = 0;
                for (const FunctorTerm& c : t.children) sum = saturating_add(sum, max_cost(c));
                return sum;
            }
            case TermKind::Coproduct: {
                std::size_t best = 0;
                for (const FunctorTerm& c : t.children) best = std::max(best, max_cost(c));
                return best;
            }
            case TermKind::Exponent: return saturating_mul(letters(t), max_cost(t.children[0]));
        }
        return 0;
    }

    // A value of t with exactly `budget` X occurrences; min_cost <= budget <= max_cost.
    Value value(const FunctorTerm& t, std::size_t budget) {
        Value v;
        switch (t.kind) {
            case TermKind::Argument:
                v.index = static_cast<std::uint32_t>(rng_.index(options_.states));
                break;
            case TermKind::Const:
                v.index = static_cast<std::uint32_t>(rng_.index(sys_.sets.elements(t.name).size()));
                break;
            case TermKind::Powerset:
            case TermKind::Bag:
            case TermKind::Dist:
            case TermKind::IntGroup:
            case TermKind::RatGroup:
                collection(t, budget, v);
                break;
            case TermKind::Product:
                v.children = spread(t.children, budget);
                break;
            case TermKind::Coproduct: {
                std::vector<std::uint32_t> feasible;
                for (std::uint32_t i = 0; i < t.children.size(); ++i)
                    if (min_cost(t.children[i]) <= budget && budget <= max_cost(t.children[i])) feasible.push_back(i);
                if (feasible.empty()) {
                    // Budget falls between the summands' ranges: take the closest one.
                    std::size_t best = kUnbounded;
                    for (std::uint32_t i = 0; i < t.children.size(); ++i) {
                        const std::size_t lo = min_cost(t.children[i]);
                        const std::size_t hi = max_cost(t.children[i]);
                        const std::size_t gap = budget < lo ? lo - budget : budget - hi;
                        if (gap < best) {
                            best = gap;
                            v.index = i;
                        }
                    }
                    const FunctorTerm& c = t.children[v.index];
                    budget = std::clamp(budget, min_cost(c), max_cost(c));
                } else {
                    v.index = feasible[rng_.index(feasible.size())];
                }
                v.children.push_back(value(t.children[v.index], budget));
                break;
            }
            case TermKind::Exponent: {
                std::vector<FunctorTerm> copies(letters(t), t.children[0]);
                v.children = spread(copies, budget);
                break;
            }
        }
        return v;
    }

private:
    std::size_t letters(const FunctorTerm& t) const { return sys_.sets.elements(t.name).size(); }

    // Splits budget over the children, each within its own bounds.
    std::vector<Value> spread(const std::vector<FunctorTerm>& children, std::size_t budget) {
        std::vector<std::size_t> share(children.size());
        std::vector<std::size_t> room(children.size());
        std::size_t left = budget;
        for (std::size_t i = 0; i < children.size(); ++i) {
            share[i] = min_cost(children[i]);
            room[i] = max_cost(children[i]) - share[i];
            left -= share[i];
        }
        while (left > 0) {
            std::vector<std::size_t> open;
            for (std::size_t i = 0; i < children.size(); ++i)
                if (room[i] > 0) open.push_back(i);
            const std::size_t i = open[rng_.index(open.size())];
            ++share[i];
            --room[i];
            --left;
        }
        std::vector<Value> out;
        for (std::size_t i = 0; i < children.size(); ++i) out.push_back(value(children[i], share[i]));
        return out;
    }

    void collection(const FunctorTerm& t, std::size_t budget, Value& v) {
        const FunctorTerm& child = t.children[0];
        const std::size_t lo = std::max<std::size_t>(1, min_cost(child));
        const std::size_t hi = max_cost(child);
        std::vector<std::size_t> chunks;
        if (hi == 0) {
            const std::size_t count = t.kind == TermKind::Dist ? 1 + rng_.index(3) : rng_.index(4);
            chunks.assign(count, 0);
        } else {
            std::size_t left = budget;
            while (left >= lo) {
                std::size_t c = std::min(left, hi);
                if (left >= 2 * lo) c = static_cast<std::size_t>(rng_.uniform(lo, std::min(hi, left - lo)));
                if (lo == 1 && rng_.coin(3, 4)) c = 1;
                chunks.push_back(c);
                left -= c;
            }
        }
        for (std::size_t c : chunks) v.children.push_back(value(child, c));
        const std::int64_t w = std::max<std::int64_t>(1, options_.max_weight);
        std::vector<std::int64_t> raw;
        for (std::size_t i = 0; i < chunks.size(); ++i) {
            std::int64_t x = rng_.uniform(1, w);
            if ((t.kind == TermKind::IntGroup || t.kind == TermKind::RatGroup) && rng_.coin()) x = -x;
            raw.push_back(x);
        }
        switch (t.kind) {
            case TermKind::Powerset: break;
            case TermKind::Bag:
            case TermKind::IntGroup:
                for (std::int64_t x : raw) v.weights.emplace_back(x);
                break;
            case TermKind::RatGroup:
                for (std::int64_t x : raw) v.weights.emplace_back(x, rng_.uniform(1, 4));
                break;
            case TermKind::Dist: {
                std::int64_t total = 0;
                for (std::int64_t x : raw) total += x;
                for (std::int64_t x : raw) v.weights.emplace_back(x, total);
                break;
            }
            default: break;
        }
    }

    const Coalgebra& sys_;
    const GeneratorOptions& options_;
    Rng rng_;
};

void collect_sets(const FunctorTerm& t, Coalgebra& sys, std::uint32_t set_size) {
    if ((t.kind == TermKind::Const || t.kind == TermKind::Exponent) && !is_numeral(t.name)) {
        auto it = std::find_if(sys.set_order.begin(), sys.set_order.end(),
                               [&](const SetDecl& d) { return d.name == t.name; });
        if (it == sys.set_order.end()) {
            std::string prefix;
            for (char c : t.name) prefix += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            std::vector<std::string> elements;
            for (std::uint32_t i = 0; i < set_size; ++i) elements.push_back(prefix + std::to_string(i));
            sys.sets.declare(t.name, elements);
            sys.set_order.push_back({t.kind == TermKind::Exponent, t.name});
        } else if (t.kind == TermKind::Exponent) {
            it->alphabet = true;
        }
    }
    for (const FunctorTerm& c : t.children) collect_sets(c, sys, set_size);
}

}  // namespace

Coalgebra generate(const GeneratorOptions& options) {
    if (options.states == 0) throw UsageError("generator needs at least one state");
    if (options.set_size == 0) throw UsageError("generator needs non-empty sets");
    Coalgebra sys;
    sys.functor_text = options.functor;
    sys.functor = std::make_shared<const FunctorTerm>(parse_functor_term(options.functor));
    collect_sets(*sys.functor, sys, options.set_size);
    flatten(*sys.functor, sys.sets);

    Generator gen(sys, options);
    const FunctorTerm& root = *sys.functor;
    const std::size_t lo = gen.min_cost(root);
    const std::size_t hi = gen.max_cost(root);
    const std::size_t n = options.states;
    if (saturating_mul(lo, n) > options.edges)
        throw UsageError("cannot place " + std::to_string(options.edges) + " edges: every state of " + options.functor +
                    " needs at least " + std::to_string(lo));
    if (saturating_mul(hi, n) < options.edges)
        throw UsageError("cannot place " + std::to_string(options.edges) + " edges: every state of " + options.functor +
                    " holds at most " + std::to_string(hi));

    Rng budget_rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::size_t> budget(n, lo);
    std::vector<std::size_t> open;
    for (std::size_t x = 0; x < n; ++x)
        if (hi > lo) open.push_back(x);
    for (std::size_t left = options.edges - lo * n; left > 0; --left) {
        const std::size_t pick = budget_rng.index(open.size());
        const std::size_t x = open[pick];
        if (++budget[x] == hi) {
            open[pick] = open.back();
            open.pop_back();
        }
    }

    for (std::size_t x = 0; x < n; ++x) {
        const std::string name = "s" + std::to_string(x);
        sys.state_index[name] = static_cast<StateIdx>(x);
        sys.states.push_back({name, {}});
    }
    for (std::size_t x = 0; x < n; ++x) sys.states[x].value = gen.value(root, budget[x]);
    return sys;
}

std::string generate_text(const GeneratorOptions& options) { return print_coalgebra(generate(options)); }

}  // namespace partref
