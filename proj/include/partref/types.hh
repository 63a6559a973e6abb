#pragma once

#include <cstdint>

namespace partref {

using StateIdx = std::uint32_t;
using BlockId = std::uint32_t;
using CompoundId = std::uint32_t;
using SortIdx = std::uint32_t;
using EdgeIdx = std::uint32_t;

}  // namespace partref
