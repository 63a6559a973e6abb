#pragma once

#include <span>
#include <vector>

#include "partref/interfaces.hh"
#include "partref/types.hh"

namespace partref {

/// One layer of structure over successor states, e.g. a set of states, a
/// weighted map, or a polynomial term sigma(x1, ..., xk).
///
/// Powerset: targets sorted and unique. Weighted kinds: targets sorted and
/// unique with a nonzero weight each. Polynomial: symbol plus arguments in
/// position order (duplicates allowed).
struct LayerValue {
    std::uint32_t symbol = 0;
    std::vector<StateIdx> targets;
    std::vector<Rational> weights;

    friend bool operator==(const LayerValue&, const LayerValue&) = default;
};

struct LayerEdge {
    Label label;
    StateIdx target = 0;
};

struct EncodedLayer {
    H1Value type;
    std::vector<LayerEdge> edges;
};

bool is_weighted(LayerKind kind);

// Brings a value into canonical form: sorts and merges entries, sums
// duplicate weights and drops zero weights.
void canonicalize(LayerKind kind, LayerValue& value);

// The encoding: the type of the value and its labelled edges.
EncodedLayer encode_layer(LayerKind kind, SortIdx sort, const LayerValue& value);

// Inverse of encode_layer on canonical values.
LayerValue decode_layer(LayerKind kind, const H1Value& type, std::span<const LayerEdge> edges);

}  // namespace partref
