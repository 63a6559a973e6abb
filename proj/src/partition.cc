#include "partref/partition.hh"

#include <algorithm>
#include <numeric>
#include <string>

#include "partref/errors.hh"

namespace partref {

namespace {

constexpr std::uint32_t kNoCompound = ~std::uint32_t{0};

void require(bool cond, const char* what) {
    if (!cond) throw InvariantError(what);
}

}  // namespace

RefinablePartition RefinablePartition::from_grouping(std::size_t n, std::span<const std::string> keys) {
    assert(keys.size() == n);
    RefinablePartition p;
    p.elems_.resize(n);
    std::iota(p.elems_.begin(), p.elems_.end(), StateIdx{0});
    std::stable_sort(p.elems_.begin(), p.elems_.end(), [&](StateIdx a, StateIdx b) { return keys[a] < keys[b]; });
    p.location_.resize(n);
    p.block_of_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) p.location_[p.elems_[i]] = i;

    std::uint32_t begin = 0;
    for (std::uint32_t i = 1; i <= n; ++i) {
        if (i == n || keys[p.elems_[i]] != keys[p.elems_[begin]]) {
            BlockId b = p.new_block(begin, i);
            for (std::uint32_t j = begin; j < i; ++j) p.block_of_[p.elems_[j]] = b;
            begin = i;
        }
    }
    return p;
}

RefinablePartition RefinablePartition::single_block(std::size_t n) {
    std::vector<std::string> keys(n);
    return from_grouping(n, keys);
}

BlockId RefinablePartition::new_block(std::uint32_t begin, std::uint32_t end) {
    blocks_.push_back(Block{begin, end, 0, true});
    ++live_blocks_;
    return static_cast<BlockId>(blocks_.size() - 1);
}

std::vector<BlockId> RefinablePartition::live_blocks() const {
    std::vector<BlockId> out;
    out.reserve(live_blocks_);
    for (BlockId b = 0; b < blocks_.size(); ++b)
        if (blocks_[b].alive) out.push_back(b);
    return out;
}

void RefinablePartition::mark(StateIdx x) {
    Block& b = blocks_[block_of_[x]];
    const std::uint32_t pos = location_[x];
    assert(pos >= b.begin + b.marked && "state already marked");
    const std::uint32_t target = b.begin + b.marked;
    const StateIdx other = elems_[target];
    elems_[target] = x;
    elems_[pos] = other;
    location_[x] = target;
    location_[other] = pos;
    ++b.marked;
    ++touched_;
}

void RefinablePartition::check_consistency() const {
    const std::size_t n = elems_.size();
    require(location_.size() == n && block_of_.size() == n, "partition arrays have inconsistent sizes");
    std::vector<char> seen(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        require(elems_[i] < n, "element out of range");
        require(!seen[elems_[i]], "elems is not a permutation");
        seen[elems_[i]] = 1;
        require(location_[elems_[i]] == i, "location does not invert elems");
    }
    std::size_t live = 0;
    std::size_t covered = 0;
    for (BlockId b = 0; b < blocks_.size(); ++b) {
        const Block& blk = blocks_[b];
        if (!blk.alive) continue;
        ++live;
        require(blk.begin < blk.end, "live block is empty");
        require(blk.marked <= blk.end - blk.begin, "marked count exceeds block size");
        covered += blk.end - blk.begin;
        for (std::uint32_t i = blk.begin; i < blk.end; ++i)
            require(block_of_[elems_[i]] == b, "state inside block interval has a different block_of");
    }
    require(live == live_blocks_, "live block count is stale");
    require(covered == n, "blocks do not cover all states");
}

CompoundTracker::CompoundTracker(const RefinablePartition& p) {
    compound_of_.assign(p.block_capacity(), kNoCompound);
    member_pos_.assign(p.block_capacity(), 0);
    if (p.num_blocks() == 0) return;
    compounds_.emplace_back();
    for (BlockId b : p.live_blocks()) {
        add_member(0, b);
        compounds_[0].size += p.size(b);
    }
    maybe_enqueue(0);
}

void CompoundTracker::ensure_block(BlockId b) {
    if (b >= compound_of_.size()) {
        compound_of_.resize(b + 1, kNoCompound);
        member_pos_.resize(b + 1, 0);
    }
}

void CompoundTracker::add_member(CompoundId c, BlockId b) {
    ensure_block(b);
    compound_of_[b] = c;
    member_pos_[b] = static_cast<std::uint32_t>(compounds_[c].members.size());
    compounds_[c].members.push_back(b);
}

void CompoundTracker::remove_member(CompoundId c, BlockId b) {
    auto& members = compounds_[c].members;
    const std::uint32_t pos = member_pos_[b];
    assert(pos < members.size() && members[pos] == b);
    members[pos] = members.back();
    member_pos_[members[pos]] = pos;
    members.pop_back();
    compound_of_[b] = kNoCompound;
}

void CompoundTracker::maybe_enqueue(CompoundId c) {
    Compound& comp = compounds_[c];
    if (!comp.queued && comp.members.size() >= 2) {
        comp.queued = true;
        worklist_.push_back(c);
    }
}

std::optional<CompoundTracker::Selection> CompoundTracker::select_subblock(const RefinablePartition& p) {
    while (!worklist_.empty()) {
        const CompoundId c = worklist_.front();
        worklist_.pop_front();
        Compound& comp = compounds_[c];
        comp.queued = false;
        if (comp.members.size() < 2) continue;
        const BlockId a = comp.members[0];
        const BlockId b = comp.members[1];
        return Selection{p.size(b) < p.size(a) ? b : a, c};
    }
    return std::nullopt;
}

CompoundId CompoundTracker::split_compound(BlockId s, const RefinablePartition& p) {
    const CompoundId c = compound_of_[s];
    if (compounds_[c].members.size() < 2) throw InvariantError("split_compound on a compound with a single subblock");
    remove_member(c, s);
    compounds_[c].size -= p.size(s);
    const CompoundId fresh = static_cast<CompoundId>(compounds_.size());
    compounds_.emplace_back();
    add_member(fresh, s);
    compounds_[fresh].size = p.size(s);
    maybe_enqueue(c);
    return fresh;
}

void CompoundTracker::register_new_blocks(BlockId parent, std::span<const BlockId> fresh, const RefinablePartition& p) {
    const CompoundId c = compound_of_[parent];
    for (BlockId b : fresh) add_member(c, b);
    if (!p.alive(parent)) remove_member(c, parent);
    maybe_enqueue(c);
}

void CompoundTracker::check_consistency(const RefinablePartition& p) const {
    std::vector<char> listed(p.block_capacity(), 0);
    std::size_t queued = 0;
    for (CompoundId c = 0; c < compounds_.size(); ++c) {
        const Compound& comp = compounds_[c];
        std::size_t size = 0;
        for (BlockId b : comp.members) {
            require(p.alive(b), "compound lists a retired block");
            require(compound_of_[b] == c, "compound_of disagrees with membership");
            require(!listed[b], "block listed in two compounds");
            listed[b] = 1;
            size += p.size(b);
        }
        require(size == comp.size, "compound size differs from the sum of its subblocks");
        require(comp.queued == (comp.members.size() >= 2), "worklist membership out of sync");
        if (comp.queued) ++queued;
    }
    require(queued == worklist_.size(), "worklist holds duplicates or stale compounds");
    for (BlockId b : p.live_blocks()) require(listed[b], "live block missing from every compound");
}

}  // namespace partref
