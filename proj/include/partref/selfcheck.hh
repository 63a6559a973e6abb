#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partref/grouping.hh"

namespace partref {

struct SelfCheckOptions {
    // Interface names as in shipped_axiom_targets(), or "broken-powerset" for the
    // negative control. Must not be empty.
    std::vector<std::string> interfaces;
    std::size_t axiom_cases = 10000;
    std::size_t partition_rounds = 200;
    std::uint64_t seed = 1;
};

struct SelfCheckReport {
    std::vector<std::string> lines;  // one "PASS name ..." or "FAIL name ..." per suite
    bool ok = true;
};

// Throws UsageError when no interface is selected or a name is unknown.
SelfCheckReport run_self_check(const SelfCheckOptions& options);

// Random mark/split sequences on RefinablePartition and CompoundTracker
// compared against a list-of-sets model. Returns the first mismatch, or "".
std::string partition_differential(std::uint64_t seed, std::size_t rounds);

// group_by_pmc against sort-and-group on random key multisets. Also checks
// sorted items <= 2 * (items outside the largest group). Returns the first
// mismatch, or "".
std::string grouping_differential(std::uint64_t seed, std::size_t cases, GroupingStats* stats = nullptr);

std::vector<std::string> known_interfaces();

}  // namespace partref
