#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "partref/coalgebra.hh"
#include "partref/functor.hh"
#include "partref/interfaces.hh"
#include "partref/layer.hh"
#include "partref/types.hh"

namespace partref {

struct Edge {
    StateIdx source = 0;
    StateIdx target = 0;
    Label label;
};

/// Single-sorted system ready for refinement: a type per state and a
/// labelled edge table, with the original states first.
struct EncodedCoalgebra {
    std::size_t num_states = 0;
    std::size_t num_original = 0;
    std::vector<SortIdx> sort_of;
    std::vector<LayerKind> sort_kinds;
    std::vector<H1Value> types;
    std::vector<Edge> edges;           // grouped by source, ascending
    std::vector<EdgeIdx> out_begin;    // num_states + 1 offsets into edges
    std::vector<EdgeIdx> pred_begin;   // num_states + 1 offsets into pred
    std::vector<EdgeIdx> pred;         // incoming edge ids per target, in edge-table order
    std::shared_ptr<const CoproductInterface> iface;
    std::vector<std::string> names;    // original states

    std::size_t num_edges() const { return edges.size(); }
    std::span<const Edge> out_edges(StateIdx x) const {
        return {edges.data() + out_begin[x], out_begin[x + 1] - out_begin[x]};
    }
    std::span<const EdgeIdx> pred_edges(StateIdx y) const {
        return {pred.data() + pred_begin[y], pred_begin[y + 1] - pred_begin[y]};
    }
};

// Multi-sorted system: one layer per state over states of the child sorts.
// Original states come first and keep their indices.
struct FactoredCoalgebra {
    std::size_t num_original = 0;
    std::vector<SortIdx> sort_of;
    std::vector<LayerValue> layers;

    std::size_t size() const { return layers.size(); }
};

struct FactorOptions {
    // Share one intermediate state among structurally equal sub-values.
    bool dedup = true;
};

FactoredCoalgebra factor(const Coalgebra& sys, const SortTable& sorts, FactorOptions options = {});

// Rebuilds the value term of a state from its layer and those below it.
Value recompose(const FactoredCoalgebra& factored, const SortTable& sorts, const FiniteSets& sets, StateIdx x);

// Coproduct interface with one component per sort.
std::shared_ptr<const CoproductInterface> sort_interface(const SortTable& sorts);

/// Disjoint union of all sorts: original states, then intermediate states
/// grouped by sort in creation order. Each layer is encoded with its sort's
/// interface and tagged with the sort.
EncodedCoalgebra desort(const FactoredCoalgebra& factored, const SortTable& sorts, std::vector<std::string> names);

// flatten, factor and desort in one go.
EncodedCoalgebra encode(const Coalgebra& sys, FactorOptions options = {});

// Single-sort system straight from layers; used by tests and benchmarks.
EncodedCoalgebra encode_layers(LayerKind kind, const std::vector<LayerValue>& layers, const Signature* signature = nullptr);

// Refines the types of the original states by the given classes.
void apply_initial_partition(EncodedCoalgebra& enc, std::span<const std::uint32_t> classes);

/// Blocks of original states under a per-state block assignment. States in
/// a block ascend; blocks are ordered by their smallest state.
std::vector<std::vector<StateIdx>> project_result(const EncodedCoalgebra& enc, std::span<const std::uint32_t> block_of);

std::string format_partition(const std::vector<std::vector<StateIdx>>& blocks, std::span<const std::string> names);

}  // namespace partref
