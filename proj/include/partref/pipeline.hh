#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "partref/coalgebra.hh"
#include "partref/engine.hh"
#include "partref/encoding.hh"

namespace partref {

struct MinimizeOptions {
    FactorOptions factor;
    EngineOptions engine;
    std::optional<std::vector<std::uint32_t>> initial_classes;
    bool oracle = false;
    std::size_t oracle_cap = 2000;  // encoded states the oracle accepts
};

struct MinimizeResult {
    std::vector<std::vector<StateIdx>> blocks;  // original states
    RunStats stats;
    bool oracle_ran = false;
    bool oracle_agrees = true;
    std::size_t oracle_iterations = 0;
};

// Encodes, refines and projects back to the original states. Throws
// UsageError when the oracle is requested above its size cap.
MinimizeResult minimize_spec(const Coalgebra& sys, const MinimizeOptions& options = {});

// Text or JSON, chosen by a leading '{'.
Coalgebra parse_coalgebra_any(std::string_view text);

}  // namespace partref
