#include "partref/reference.hh"

#include <sstream>

#include "partref/serialize.hh"

namespace partref {

namespace reference {

H1Value type_of(LayerKind kind, SortIdx sort, const LayerValue& value) {
    H1Value t;
    t.sort = sort;
    switch (kind) {
        case LayerKind::Powerset:
            t.magnitude = value.targets.empty() ? 0 : 1;
            break;
        case LayerKind::IntGroup:
        case LayerKind::RatGroup:
        case LayerKind::Bag:
            for (const Rational& w : value.weights) t.magnitude += w;
            break;
        case LayerKind::Distribution:
            break;
        case LayerKind::Polynomial:
            t.symbol = value.symbol;
            break;
    }
    return t;
}

Weight weight(LayerKind kind, SortIdx sort, const LayerValue& value, std::span<const char> in_c) {
    Weight w;
    w.sort = sort;
    switch (kind) {
        case LayerKind::Powerset: {
            std::int64_t inside = 0;
            bool outside = false;
            for (StateIdx t : value.targets) {
                if (in_c[t])
                    ++inside;
                else
                    outside = true;
            }
            w.outside = outside ? 1 : 0;
            w.inside = inside;
            break;
        }
        case LayerKind::IntGroup:
        case LayerKind::RatGroup:
        case LayerKind::Distribution:
        case LayerKind::Bag:
            for (std::size_t i = 0; i < value.targets.size(); ++i) {
                if (in_c[value.targets[i]])
                    w.inside += value.weights[i];
                else
                    w.outside += value.weights[i];
            }
            break;
        case LayerKind::Polynomial:
            w.symbol = value.symbol;
            for (StateIdx t : value.targets) w.marks.push_back(in_c[t] ? '\1' : '\0');
            break;
    }
    return w;
}

std::string split_key(LayerKind kind, const LayerValue& value, std::span<const std::uint8_t> chi) {
    switch (kind) {
        case LayerKind::Powerset: {
            bool seen[3] = {false, false, false};
            for (StateIdx t : value.targets) seen[chi[t]] = true;
            return h3::powerset(seen[0], seen[1], seen[2]);
        }
        case LayerKind::IntGroup:
        case LayerKind::RatGroup:
        case LayerKind::Distribution:
        case LayerKind::Bag: {
            Rational sums[3];
            for (std::size_t i = 0; i < value.targets.size(); ++i) sums[chi[value.targets[i]]] += value.weights[i];
            return h3::weighted(sums[0], sums[1], sums[2]);
        }
        case LayerKind::Polynomial: {
            std::string digits;
            for (StateIdx t : value.targets) digits.push_back(static_cast<char>(chi[t]));
            return h3::polynomial(value.symbol, digits);
        }
    }
    return {};
}

LayerValue random_value(LayerKind kind, const Signature* signature, std::size_t num_states, Rng& rng) {
    LayerValue v;
    if (kind == LayerKind::Polynomial) {
        v.symbol = static_cast<std::uint32_t>(rng.index(signature->size()));
        for (std::uint32_t i = 0; i < (*signature)[v.symbol].arity; ++i)
            v.targets.push_back(static_cast<StateIdx>(rng.index(num_states)));
        return v;
    }
    for (StateIdx x = 0; x < num_states; ++x) {
        if (!rng.coin()) continue;
        v.targets.push_back(x);
        switch (kind) {
            case LayerKind::Powerset:
                break;
            case LayerKind::IntGroup: {
                std::int64_t w = rng.uniform(-6, 5);
                v.weights.emplace_back(w >= 0 ? w + 1 : w);
                break;
            }
            case LayerKind::RatGroup: {
                std::int64_t w = rng.uniform(-6, 5);
                v.weights.emplace_back(w >= 0 ? w + 1 : w, rng.uniform(1, 5));
                break;
            }
            case LayerKind::Distribution:
            case LayerKind::Bag:
                v.weights.emplace_back(rng.uniform(1, 4));
                break;
            case LayerKind::Polynomial:
                break;
        }
    }
    if (kind == LayerKind::Distribution) {
        if (v.targets.empty()) {
            v.targets.push_back(static_cast<StateIdx>(rng.index(num_states)));
            v.weights.emplace_back(1);
        }
        Rational total;
        for (const Rational& w : v.weights) total += w;
        for (Rational& w : v.weights) w = Rational(w.num(), total.num());
    }
    return v;
}

}  // namespace reference

namespace {

std::string describe(const AxiomTarget& target, LayerKind kind, const char* which, const std::string& detail) {
    std::ostringstream os;
    os << target.name << ": " << which << " axiom failed for a " << layer_kind_name(kind) << " value: " << detail;
    return os.str();
}

class DroppingRestInterface final : public RefinementInterface {
public:
    std::string name() const override { return "broken-powerset"; }
    Weight init(const H1Value& type, std::span<const Label> labels) const override { return inner_.init(type, labels); }
    UpdateResult update(std::span<const Label> labels, const Weight& w) const override {
        UpdateResult res = inner_.update(labels, w);
        res.to_rest = Weight{};
        return res;
    }
    std::string serialize_type(const H1Value& type) const override { return inner_.serialize_type(type); }
    std::string oracle_signature(const H1Value& type, std::span<const SignatureEdge> edges) const override {
        return inner_.oracle_signature(type, edges);
    }

private:
    PowersetInterface inner_;
};

Signature test_signature() {
    return Signature({{"nil", 0}, {"one", 1}, {"pair", 2}, {"triple", 3}});
}

}  // namespace

AxiomReport check_axioms(const AxiomTarget& target, std::uint64_t seed, std::size_t cases) {
    AxiomReport report;
    report.name = target.name;
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        ++report.cases;
        const SortIdx sort = target.tagged ? static_cast<SortIdx>(rng.index(target.kinds.size())) : 0;
        const LayerKind kind = target.kinds[target.tagged ? sort : 0];
        const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 8));
        const LayerValue value = reference::random_value(kind, &target.signature, n, rng);
        const EncodedLayer enc = encode_layer(kind, sort, value);

        // Labels of another sort must be ignored by a coproduct.
        std::vector<Label> noise;
        if (target.tagged && target.kinds.size() > 1 && rng.coin()) {
            SortIdx other = static_cast<SortIdx>(rng.index(target.kinds.size() - 1));
            if (other >= sort) ++other;
            noise.push_back(Label{other, 1});
        }

        std::vector<Label> all = noise;
        for (const LayerEdge& e : enc.edges) all.push_back(e.label);
        const std::vector<char> everything(n, 1);
        const Weight init = target.iface->init(enc.type, all);
        const Weight expected_init = reference::weight(kind, sort, value, everything);
        if (!(init == expected_init)) {
            if (report.init_failures++ == 0)
                report.first_failure =
                    describe(target, kind, "init", "got " + to_string(init) + ", want " + to_string(expected_init));
        }

        std::vector<std::uint8_t> chi(n);
        for (auto& v : chi) v = static_cast<std::uint8_t>(rng.uniform(0, 2));
        std::vector<char> in_c(n), in_s(n), in_rest(n);
        for (std::size_t x = 0; x < n; ++x) {
            in_c[x] = chi[x] >= 1;
            in_s[x] = chi[x] == 2;
            in_rest[x] = chi[x] == 1;
        }
        std::vector<Label> to_s = noise;
        for (const LayerEdge& e : enc.edges)
            if (in_s[e.target]) to_s.push_back(e.label);

        const UpdateResult got = target.iface->update(to_s, reference::weight(kind, sort, value, in_c));
        std::string key = reference::split_key(kind, value, chi);
        if (target.tagged) {
            ByteWriter tagged;
            tagged.u32(sort).raw(key);
            key = tagged.take();
        }
        const Weight want_s = reference::weight(kind, sort, value, in_s);
        const Weight want_rest = reference::weight(kind, sort, value, in_rest);
        if (!(got.to_subblock == want_s) || got.split_key != key || !(got.to_rest == want_rest)) {
            if (report.update_failures++ == 0 && report.first_failure.empty())
                report.first_failure = describe(target, kind, "update",
                                                "got (" + to_string(got.to_subblock) + ", " + hex_dump(got.split_key) +
                                                    ", " + to_string(got.to_rest) + "), want (" + to_string(want_s) +
                                                    ", " + hex_dump(key) + ", " + to_string(want_rest) + ")");
        }
    }
    return report;
}

std::vector<AxiomTarget> shipped_axiom_targets() {
    const Signature sig = test_signature();
    const std::vector<std::pair<std::string, LayerKind>> bases = {
        {"powerset", LayerKind::Powerset},         {"int-group", LayerKind::IntGroup}, {"rat-group", LayerKind::RatGroup},
        {"distribution", LayerKind::Distribution}, {"bag", LayerKind::Bag},            {"polynomial", LayerKind::Polynomial},
    };
    std::vector<AxiomTarget> targets;
    std::vector<std::shared_ptr<const RefinementInterface>> parts;
    std::vector<LayerKind> kinds;
    for (const auto& [name, kind] : bases) {
        auto iface = make_interface(kind, &sig);
        targets.push_back(AxiomTarget{name, iface, {kind}, sig, false});
        parts.push_back(iface);
        kinds.push_back(kind);
    }
    targets.push_back(AxiomTarget{"coproduct", std::make_shared<CoproductInterface>(parts), kinds, sig, true});
    return targets;
}

AxiomTarget broken_axiom_target() {
    return AxiomTarget{"broken-powerset", std::make_shared<DroppingRestInterface>(), {LayerKind::Powerset}, {}, false};
}

}  // namespace partref
