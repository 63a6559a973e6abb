#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "partref/encoding.hh"

namespace partref {

// Result of the brute-force minimizer.
struct NaivePartition {
    std::vector<std::uint32_t> block;  // dense block index per state
    std::size_t iterations = 0;        // refinement rounds until the fixpoint
    std::size_t num_blocks = 0;
};

/// Groups states by type, then regroups by one-step signatures over the
/// current blocks until the block count stops growing.
NaivePartition naive_minimize(const EncodedCoalgebra& enc);

// Dense renumbering by smallest member over the first `count` states.
std::vector<std::uint32_t> canonical_blocks(std::span<const std::uint32_t> block_of, std::size_t count);

// Same equivalence on states 0..count-1.
bool partitions_equal(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, std::size_t count);
bool partitions_equal(const NaivePartition& a, std::span<const std::uint32_t> b, std::size_t count);

}  // namespace partref
