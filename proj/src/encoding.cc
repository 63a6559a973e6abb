#include "partref/encoding.hh"

#include <algorithm>
#include <unordered_map>

#include "partref/errors.hh"
#include "partref/serialize.hh"

namespace partref {

namespace {

class Factorer {
public:
    Factorer(const Coalgebra& sys, const SortTable& sorts, FactorOptions options)
        : sys_(sys), sorts_(sorts), options_(options) {}

    FactoredCoalgebra run() {
        const std::size_t n = sys_.size();
        out_.num_original = n;
        out_.sort_of.assign(n, 0);
        out_.layers.resize(n);
        for (StateIdx x = 0; x < n; ++x) out_.layers[x] = layer_of(0, sys_.states[x].value);
        return std::move(out_);
    }

private:
    StateIdx child_state(SortIdx sort, const FunctorTerm& term, const Value& v) {
        if (term.kind == TermKind::Argument) return v.index;
        return intern(sort, v);
    }

    StateIdx intern(SortIdx sort, const Value& v) {
        LayerValue layer = layer_of(sort, v);
        std::string key;
        if (options_.dedup) {
            ByteWriter w;
            w.u32(sort).u32(layer.symbol).u32(static_cast<std::uint32_t>(layer.targets.size()));
            for (StateIdx t : layer.targets) w.u32(t);
            for (const Rational& r : layer.weights) w.rational(r);
            key = w.take();
            auto it = seen_.find(key);
            if (it != seen_.end()) return it->second;
        }
        const StateIdx id = static_cast<StateIdx>(out_.layers.size());
        out_.sort_of.push_back(sort);
        out_.layers.push_back(std::move(layer));
        if (options_.dedup) seen_.emplace(std::move(key), id);
        return id;
    }

    LayerValue layer_of(SortIdx sort, const Value& v) {
        const SortDescriptor& d = sorts_[sort];
        const FunctorTerm& t = *d.term;
        LayerValue layer;
        switch (t.kind) {
            case TermKind::Powerset:
            case TermKind::Bag:
            case TermKind::Dist:
            case TermKind::IntGroup:
            case TermKind::RatGroup:
                for (const Value& c : v.children) layer.targets.push_back(child_state(d.child, t.children[0], c));
                layer.weights = v.weights;
                canonicalize(d.kind, layer);
                break;
            case TermKind::Const:
                layer.symbol = v.index;
                break;
            case TermKind::Product: {
                std::vector<std::uint32_t> consts;
                for (std::size_t i = 0; i < t.children.size(); ++i) {
                    const FunctorTerm& c = t.children[i];
                    if (c.kind == TermKind::Const)
                        consts.push_back(v.children[i].index);
                    else
                        layer.targets.push_back(child_state(sorts_.sort_of(&c), c, v.children[i]));
                }
                layer.symbol = product_symbol(t, sys_.sets, consts);
                break;
            }
            case TermKind::Coproduct: {
                const FunctorTerm& summand = t.children[v.index];
                if (summand.kind == TermKind::Const) {
                    layer.symbol = d.summand_base[v.index] + v.children[0].index;
                } else {
                    layer.symbol = d.summand_base[v.index];
                    layer.targets.push_back(child_state(sorts_.sort_of(&summand), summand, v.children[0]));
                }
                break;
            }
            case TermKind::Exponent: {
                const SortIdx child = d.arg_sorts[0].empty() ? 0 : d.arg_sorts[0][0];
                for (const Value& c : v.children) layer.targets.push_back(child_state(child, t.children[0], c));
                break;
            }
            case TermKind::Argument:
                throw InvariantError("argument has no layer");
        }
        return layer;
    }

    const Coalgebra& sys_;
    const SortTable& sorts_;
    FactorOptions options_;
    FactoredCoalgebra out_;
    std::unordered_map<std::string, StateIdx> seen_;
};

Value recompose_at(const FactoredCoalgebra& f, const SortTable& sorts, const FiniteSets& sets, SortIdx sort, StateIdx x);

Value child_value(const FactoredCoalgebra& f, const SortTable& sorts, const FiniteSets& sets, SortIdx sort,
                  const FunctorTerm& term, StateIdx y) {
    if (term.kind == TermKind::Argument) return Value{y, {}, {}};
    return recompose_at(f, sorts, sets, sort, y);
}

Value recompose_at(const FactoredCoalgebra& f, const SortTable& sorts, const FiniteSets& sets, SortIdx sort, StateIdx x) {
    const SortDescriptor& d = sorts[sort];
    const FunctorTerm& t = *d.term;
    const LayerValue& layer = f.layers[x];
    Value v;
    switch (t.kind) {
        case TermKind::Powerset:
        case TermKind::Bag:
        case TermKind::Dist:
        case TermKind::IntGroup:
        case TermKind::RatGroup:
            for (StateIdx y : layer.targets) v.children.push_back(child_value(f, sorts, sets, d.child, t.children[0], y));
            v.weights = layer.weights;
            break;
        case TermKind::Const:
            v.index = layer.symbol;
            break;
        case TermKind::Product: {
            std::vector<std::uint32_t> radix;
            for (const FunctorTerm& c : t.children)
                if (c.kind == TermKind::Const) radix.push_back(static_cast<std::uint32_t>(sets.elements(c.name).size()));
            std::vector<std::uint32_t> digits(radix.size());
            std::uint32_t sym = layer.symbol;
            for (std::size_t i = radix.size(); i-- > 0;) {
                digits[i] = sym % radix[i];
                sym /= radix[i];
            }
            std::size_t ci = 0;
            std::size_t ai = 0;
            for (const FunctorTerm& c : t.children) {
                if (c.kind == TermKind::Const)
                    v.children.push_back(Value{digits[ci++], {}, {}});
                else
                    v.children.push_back(child_value(f, sorts, sets, sorts.sort_of(&c), c, layer.targets[ai++]));
            }
            break;
        }
        case TermKind::Coproduct: {
            std::size_t i = d.summand_base.size();
            while (i > 0 && d.summand_base[i - 1] > layer.symbol) --i;
            v.index = static_cast<std::uint32_t>(i - 1);
            const FunctorTerm& summand = t.children[v.index];
            if (summand.kind == TermKind::Const)
                v.children.push_back(Value{layer.symbol - d.summand_base[v.index], {}, {}});
            else
                v.children.push_back(child_value(f, sorts, sets, sorts.sort_of(&summand), summand, layer.targets[0]));
            break;
        }
        case TermKind::Exponent: {
            const SortIdx child = d.arg_sorts[0].empty() ? 0 : d.arg_sorts[0][0];
            for (StateIdx y : layer.targets) v.children.push_back(child_value(f, sorts, sets, child, t.children[0], y));
            break;
        }
        case TermKind::Argument:
            break;
    }
    return v;
}

void build_pred(EncodedCoalgebra& enc) {
    const std::size_t n = enc.num_states;
    enc.pred_begin.assign(n + 1, 0);
    for (const Edge& e : enc.edges) ++enc.pred_begin[e.target + 1];
    for (std::size_t i = 0; i < n; ++i) enc.pred_begin[i + 1] += enc.pred_begin[i];
    enc.pred.assign(enc.edges.size(), 0);
    std::vector<EdgeIdx> fill(enc.pred_begin.begin(), enc.pred_begin.end() - 1);
    for (EdgeIdx e = 0; e < enc.edges.size(); ++e) enc.pred[fill[enc.edges[e].target]++] = e;
}

void append_layer(EncodedCoalgebra& enc, LayerKind kind, SortIdx sort, const LayerValue& layer) {
    EncodedLayer el = encode_layer(kind, sort, layer);
    const StateIdx x = static_cast<StateIdx>(enc.types.size());
    enc.types.push_back(el.type);
    enc.sort_of.push_back(sort);
    for (const LayerEdge& e : el.edges) enc.edges.push_back(Edge{x, e.target, e.label});
    enc.out_begin.push_back(static_cast<EdgeIdx>(enc.edges.size()));
}

}  // namespace

FactoredCoalgebra factor(const Coalgebra& sys, const SortTable& sorts, FactorOptions options) {
    return Factorer(sys, sorts, options).run();
}

Value recompose(const FactoredCoalgebra& factored, const SortTable& sorts, const FiniteSets& sets, StateIdx x) {
    Value v = recompose_at(factored, sorts, sets, factored.sort_of[x], x);
    canonicalize_value(*sorts[factored.sort_of[x]].term, v);
    return v;
}

std::shared_ptr<const CoproductInterface> sort_interface(const SortTable& sorts) {
    std::vector<std::shared_ptr<const RefinementInterface>> parts;
    for (const SortDescriptor& d : sorts.sorts) parts.push_back(make_interface(d.kind, &d.signature));
    return std::make_shared<CoproductInterface>(std::move(parts));
}

EncodedCoalgebra desort(const FactoredCoalgebra& factored, const SortTable& sorts, std::vector<std::string> names) {
    const std::size_t n = factored.size();
    const std::size_t n0 = factored.num_original;
    if (n > 0xfffffff0u) throw OverflowError("too many states");

    // Intermediate states grouped by sort, creation order within a sort.
    std::vector<std::size_t> per_sort(sorts.size() + 1, 0);
    for (std::size_t x = n0; x < n; ++x) ++per_sort[factored.sort_of[x] + 1];
    for (std::size_t s = 0; s < sorts.size(); ++s) per_sort[s + 1] += per_sort[s];
    std::vector<StateIdx> new_id(n);
    std::vector<StateIdx> order(n);
    for (StateIdx x = 0; x < n0; ++x) {
        new_id[x] = x;
        order[x] = x;
    }
    for (std::size_t x = n0; x < n; ++x) {
        const StateIdx id = static_cast<StateIdx>(n0 + per_sort[factored.sort_of[x]]++);
        new_id[x] = id;
        order[id] = static_cast<StateIdx>(x);
    }

    EncodedCoalgebra enc;
    enc.num_states = n;
    enc.num_original = n0;
    enc.names = std::move(names);
    enc.iface = sort_interface(sorts);
    for (const SortDescriptor& d : sorts.sorts) enc.sort_kinds.push_back(d.kind);
    enc.types.reserve(n);
    enc.sort_of.reserve(n);
    enc.out_begin.reserve(n + 1);
    enc.out_begin.push_back(0);
    for (StateIdx id = 0; id < n; ++id) {
        const StateIdx x = order[id];
        LayerValue layer = factored.layers[x];
        for (StateIdx& t : layer.targets) t = new_id[t];
        append_layer(enc, sorts[factored.sort_of[x]].kind, factored.sort_of[x], layer);
    }
    if (enc.edges.size() > 0xfffffff0u) throw OverflowError("too many edges");
    build_pred(enc);
    return enc;
}

EncodedCoalgebra encode(const Coalgebra& sys, FactorOptions options) {
    const SortTable sorts = flatten(*sys.functor, sys.sets);
    std::vector<std::string> names;
    names.reserve(sys.size());
    for (const StateDecl& s : sys.states) names.push_back(s.name);
    return desort(factor(sys, sorts, options), sorts, std::move(names));
}

EncodedCoalgebra encode_layers(LayerKind kind, const std::vector<LayerValue>& layers, const Signature* signature) {
    EncodedCoalgebra enc;
    enc.num_states = layers.size();
    enc.num_original = layers.size();
    enc.iface = std::make_shared<CoproductInterface>(
        std::vector<std::shared_ptr<const RefinementInterface>>{make_interface(kind, signature)});
    enc.sort_kinds = {kind};
    enc.out_begin.push_back(0);
    for (std::size_t x = 0; x < layers.size(); ++x) {
        enc.names.push_back("x" + std::to_string(x));
        LayerValue layer = layers[x];
        canonicalize(kind, layer);
        append_layer(enc, kind, 0, layer);
    }
    build_pred(enc);
    return enc;
}

void apply_initial_partition(EncodedCoalgebra& enc, std::span<const std::uint32_t> classes) {
    if (classes.size() != enc.num_original) throw Error("initial partition must assign a class to every original state");
    for (std::size_t x = 0; x < enc.num_original; ++x) enc.types[x].block_class = classes[x];
}

std::vector<std::vector<StateIdx>> project_result(const EncodedCoalgebra& enc, std::span<const std::uint32_t> block_of) {
    std::unordered_map<std::uint32_t, std::size_t> slot;
    std::vector<std::vector<StateIdx>> blocks;
    for (StateIdx x = 0; x < enc.num_original; ++x) {
        auto [it, fresh] = slot.emplace(block_of[x], blocks.size());
        if (fresh) blocks.emplace_back();
        blocks[it->second].push_back(x);
    }
    return blocks;
}

std::string format_partition(const std::vector<std::vector<StateIdx>>& blocks, std::span<const std::string> names) {
    std::string out;
    for (const auto& block : blocks) {
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (i) out += ' ';
            out += names[block[i]];
        }
        out += '\n';
    }
    return out;
}

}  // namespace partref
