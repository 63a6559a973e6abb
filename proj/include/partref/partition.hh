#pragma once

#include <cassert>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "partref/grouping.hh"
#include "partref/types.hh"

namespace partref {

/// Refinable partition over the states 0..n-1 (X/P).
///
/// All states live in one array; every block owns a contiguous interval of
/// it. Each block keeps a count of marked states that occupy a prefix of its
/// interval, so marking and splitting off the marked part cost O(1) per
/// touched state. Block ids of retired blocks are never handed out again.
class RefinablePartition {
public:
    RefinablePartition() = default;

    // One block per distinct key; blocks ordered by key, states in a block by index.
    static RefinablePartition from_grouping(std::size_t n, std::span<const std::string> keys);

    // Everything in a single block (or no blocks for n == 0).
    static RefinablePartition single_block(std::size_t n);

    std::size_t num_states() const { return elems_.size(); }
    std::size_t num_blocks() const { return live_blocks_; }
    // Number of block ids handed out so far, including retired ones.
    std::size_t block_capacity() const { return blocks_.size(); }

    BlockId block_of(StateIdx x) const { return block_of_[x]; }
    bool alive(BlockId b) const { return b < blocks_.size() && blocks_[b].alive; }
    std::size_t size(BlockId b) const { return blocks_[b].end - blocks_[b].begin; }
    std::size_t marked_count(BlockId b) const { return blocks_[b].marked; }
    bool is_marked(StateIdx x) const {
        const Block& b = blocks_[block_of_[x]];
        return location_[x] < b.begin + b.marked;
    }
    std::span<const StateIdx> members(BlockId b) const {
        return {elems_.data() + blocks_[b].begin, blocks_[b].end - blocks_[b].begin};
    }
    std::span<const StateIdx> marked_members(BlockId b) const {
        return {elems_.data() + blocks_[b].begin, blocks_[b].marked};
    }

    // Live block ids in increasing order.
    std::vector<BlockId> live_blocks() const;

    // Moves x into the marked prefix of its block. x must be unmarked.
    void mark(StateIdx x);

    // Forgets all marks of b without moving anything out.
    void clear_marks(BlockId b) { blocks_[b].marked = 0; }

    /// Removes the marked states of b and regroups them into fresh blocks, one
    /// per distinct key (ascending key order). b is retired when nothing is
    /// left. Marks of b are reset. Returns the fresh block ids.
    template <class KeyFn>
    std::vector<BlockId> split_marked_by_key(BlockId b, KeyFn key, GroupingStats* stats = nullptr);

    // Throws InvariantError if the internal representation is inconsistent.
    void check_consistency() const;

    // Operation counter: states moved or swapped, for linear-time assertions.
    std::uint64_t touched() const { return touched_; }

private:
    struct Block {
        std::uint32_t begin = 0;
        std::uint32_t end = 0;
        std::uint32_t marked = 0;
        bool alive = true;
    };

    BlockId new_block(std::uint32_t begin, std::uint32_t end);

    std::vector<StateIdx> elems_;
    std::vector<std::uint32_t> location_;
    std::vector<BlockId> block_of_;
    std::vector<Block> blocks_;
    std::size_t live_blocks_ = 0;
    std::uint64_t touched_ = 0;
};

template <class KeyFn>
std::vector<BlockId> RefinablePartition::split_marked_by_key(BlockId b, KeyFn key, GroupingStats* stats) {
    std::vector<BlockId> fresh;
    Block& block = blocks_[b];
    assert(block.alive);
    if (block.marked == 0) return fresh;

    std::vector<StateIdx> marked(elems_.begin() + block.begin, elems_.begin() + block.begin + block.marked);
    std::vector<std::size_t> bounds =
        group_by_pmc(marked, [&](StateIdx x) -> std::string_view { return key(x); }, stats);

    const std::uint32_t start = block.begin;
    const std::uint32_t count = block.marked;
    for (std::uint32_t i = 0; i < count; ++i) {
        elems_[start + i] = marked[i];
        location_[marked[i]] = start + i;
    }
    touched_ += count;

    // The marked prefix leaves b; b keeps the unmarked suffix.
    blocks_[b].begin = start + count;
    blocks_[b].marked = 0;
    if (blocks_[b].begin == blocks_[b].end) {
        blocks_[b].alive = false;
        --live_blocks_;
    }

    for (std::size_t g = 0; g + 1 < bounds.size(); ++g) {
        BlockId nb = new_block(start + static_cast<std::uint32_t>(bounds[g]), start + static_cast<std::uint32_t>(bounds[g + 1]));
        for (std::size_t i = bounds[g]; i < bounds[g + 1]; ++i) block_of_[marked[i]] = nb;
        fresh.push_back(nb);
    }
    return fresh;
}

/// Groups the blocks of X/P into the compound blocks of X/Q and keeps the
/// worklist of compounds that still contain two or more subblocks.
class CompoundTracker {
public:
    struct Selection {
        BlockId subblock;
        CompoundId compound;
    };

    CompoundTracker() = default;

    // One compound holding every live block of p.
    explicit CompoundTracker(const RefinablePartition& p);

    CompoundId compound_of(BlockId b) const { return compound_of_[b]; }
    std::size_t compound_size(CompoundId c) const { return compounds_[c].size; }
    std::span<const BlockId> subblocks(CompoundId c) const { return compounds_[c].members; }
    std::size_t num_compounds() const { return compounds_.size(); }
    bool queued(CompoundId c) const { return compounds_[c].queued; }
    std::size_t worklist_size() const { return worklist_.size(); }

    /// Pops a compound with at least two subblocks and returns the smaller of
    /// its first two subblocks, so 2 * |S| <= |C|. Nothing when every
    /// compound has a single subblock.
    std::optional<Selection> select_subblock(const RefinablePartition& p);

    /// Moves S out of its compound into a compound of its own. S must not be
    /// the only subblock. The remainder is re-enqueued if it still has two or
    /// more subblocks. Returns the compound now holding S.
    CompoundId split_compound(BlockId s, const RefinablePartition& p);

    /// Fresh blocks split off `parent` join parent's compound; parent leaves
    /// it if it was retired.
    void register_new_blocks(BlockId parent, std::span<const BlockId> fresh, const RefinablePartition& p);

    void check_consistency(const RefinablePartition& p) const;

private:
    struct Compound {
        std::vector<BlockId> members;
        std::size_t size = 0;
        bool queued = false;
    };

    void ensure_block(BlockId b);
    void add_member(CompoundId c, BlockId b);
    void remove_member(CompoundId c, BlockId b);
    void maybe_enqueue(CompoundId c);

    std::vector<CompoundId> compound_of_;
    std::vector<std::uint32_t> member_pos_;
    std::vector<Compound> compounds_;
    std::deque<CompoundId> worklist_;
};

}  // namespace partref
