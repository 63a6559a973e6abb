#pragma once

#include <cstdint>
#include <string>

#include "partref/coalgebra.hh"

namespace partref {

struct GeneratorOptions {
    std::string functor;
    std::size_t states = 0;
    std::size_t edges = 0;  // target number of X occurrences over all states
    std::uint64_t seed = 0;
    std::uint32_t set_size = 3;     // elements per named alphabet or constant set
    std::int64_t max_weight = 5;    // weights drawn from [1, max_weight] (groups: +/-)
};

/// Random system of the given functor term. Named sets are declared with
/// set_size elements; each state gets at least the fewest X occurrences its
/// type allows and the rest of the budget is spread at random. Distributions
/// sum to exactly 1. Throws Error when the budget cannot be met.
Coalgebra generate(const GeneratorOptions& options);

std::string generate_text(const GeneratorOptions& options);

}  // namespace partref
