#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "partref/encoding.hh"
#include "partref/grouping.hh"
#include "partref/partition.hh"

namespace partref {

struct RunStats {
    std::size_t states = 0;
    std::size_t edges = 0;
    std::size_t initial_blocks = 0;
    std::size_t final_blocks = 0;
    std::size_t compound_splits = 0;           // k
    std::size_t max_subblock_memberships = 0;  // max over y of |{i : y in S_i}|
    std::size_t middle_block_total = 0;        // sum of middle-block sizes
    std::size_t marked_states = 0;             // (x, p_C) pairs processed in all splits
    std::size_t moved_states = 0;              // states that left their block
    std::size_t smaller_half_violations = 0;   // selections with 2|S| > |C|; always 0
    std::size_t weight_cells = 0;
    GroupingStats grouping;
    double init_seconds = 0;
    double wall_seconds = 0;

    // key=value lines, one per counter.
    std::string to_text() const;
};

enum class InvariantChecks {
    None,
    Structural,  // data structure consistency and edge-to-cell bookkeeping
    Full,        // also cell contents and stability; quadratic, small systems only
};

struct EngineOptions {
    InvariantChecks checks = InvariantChecks::None;
};

/// Partition refinement on an encoded system.
///
/// X/P lives in a RefinablePartition and X/Q in a CompoundTracker. Each edge
/// points (lastW) to a weight cell in deref holding w(C) of its source for
/// the compound C of its target.
class Engine {
public:
    explicit Engine(const EncodedCoalgebra& enc, EngineOptions options = {});

    // Types into X/P, one weight cell per state, a single compound.
    void initialize();

    // One main-loop iteration. False once X/P = X/Q.
    bool step();

    void run();

    // Refines X/P by S, which must be a compound of its own by now.
    void split(BlockId s);

    const RefinablePartition& partition() const { return partition_; }
    const CompoundTracker& compounds() const { return tracker_; }
    const RunStats& stats() const { return stats_; }

    // Current block id of every state.
    std::vector<std::uint32_t> block_assignment() const;

    // Throws InvariantError when a checked invariant does not hold.
    void check_invariants(InvariantChecks level) const;

private:
    const EncodedCoalgebra& enc_;
    const CoproductInterface& iface_;
    EngineOptions options_;

    RefinablePartition partition_;
    CompoundTracker tracker_;
    std::vector<std::vector<EdgeIdx>> to_sub_;
    std::vector<std::uint32_t> last_w_;
    std::vector<Weight> deref_;
    std::vector<std::uint32_t> cell_edges_;  // edges pointing to each cell
    std::vector<std::vector<std::pair<StateIdx, std::uint32_t>>> marks_;
    std::vector<std::pair<BlockId, std::string>> m_;
    std::vector<std::string> split_key_;
    std::vector<std::uint32_t> memberships_;
    std::vector<Label> labels_;
    RunStats stats_;
    bool initialized_ = false;
};

// Runs the engine and returns the block of every state.
std::vector<std::uint32_t> minimize(const EncodedCoalgebra& enc, RunStats* stats = nullptr, EngineOptions options = {});

}  // namespace partref
