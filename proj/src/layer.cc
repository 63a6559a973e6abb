#include "partref/layer.hh"

#include <algorithm>
#include <numeric>

#include "partref/errors.hh"

namespace partref {

bool is_weighted(LayerKind kind) {
    return kind == LayerKind::IntGroup || kind == LayerKind::RatGroup || kind == LayerKind::Distribution ||
           kind == LayerKind::Bag;
}

void canonicalize(LayerKind kind, LayerValue& value) {
    if (kind == LayerKind::Polynomial) return;
    if (kind == LayerKind::Powerset) {
        std::sort(value.targets.begin(), value.targets.end());
        value.targets.erase(std::unique(value.targets.begin(), value.targets.end()), value.targets.end());
        value.weights.clear();
        return;
    }
    if (value.weights.size() != value.targets.size()) throw Error("weighted layer with mismatched weights");
    std::vector<std::size_t> order(value.targets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value.targets[a] < value.targets[b]; });
    LayerValue out;
    out.symbol = value.symbol;
    for (std::size_t i = 0; i < order.size();) {
        const StateIdx t = value.targets[order[i]];
        Rational total;
        while (i < order.size() && value.targets[order[i]] == t) total += value.weights[order[i++]];
        if (!total.is_zero()) {
            out.targets.push_back(t);
            out.weights.push_back(total);
        }
    }
    value = std::move(out);
}

EncodedLayer encode_layer(LayerKind kind, SortIdx sort, const LayerValue& value) {
    EncodedLayer enc;
    enc.type.sort = sort;
    enc.edges.reserve(value.targets.size());
    switch (kind) {
        case LayerKind::Powerset:
            enc.type.magnitude = value.targets.empty() ? 0 : 1;
            for (StateIdx t : value.targets) enc.edges.push_back({Label{sort, 1}, t});
            break;
        case LayerKind::IntGroup:
        case LayerKind::RatGroup:
        case LayerKind::Bag:
            for (std::size_t i = 0; i < value.targets.size(); ++i) {
                enc.type.magnitude += value.weights[i];
                enc.edges.push_back({Label{sort, value.weights[i]}, value.targets[i]});
            }
            break;
        case LayerKind::Distribution:
            for (std::size_t i = 0; i < value.targets.size(); ++i)
                enc.edges.push_back({Label{sort, value.weights[i]}, value.targets[i]});
            break;
        case LayerKind::Polynomial:
            enc.type.symbol = value.symbol;
            for (std::size_t i = 0; i < value.targets.size(); ++i)
                enc.edges.push_back({Label{sort, static_cast<std::int64_t>(i + 1)}, value.targets[i]});
            break;
    }
    return enc;
}

LayerValue decode_layer(LayerKind kind, const H1Value& type, std::span<const LayerEdge> edges) {
    LayerValue v;
    if (kind == LayerKind::Polynomial) {
        v.symbol = type.symbol;
        v.targets.assign(edges.size(), 0);
        for (const LayerEdge& e : edges) {
            const std::int64_t pos = e.label.value.num();
            if (pos < 1 || static_cast<std::size_t>(pos) > edges.size()) throw Error("polynomial edge with bad position");
            v.targets[pos - 1] = e.target;
        }
        return v;
    }
    for (const LayerEdge& e : edges) {
        v.targets.push_back(e.target);
        if (is_weighted(kind)) v.weights.push_back(e.label.value);
    }
    canonicalize(kind, v);
    return v;
}

}  // namespace partref
