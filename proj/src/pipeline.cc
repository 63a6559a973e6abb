#include "partref/pipeline.hh"

#include "partref/errors.hh"
#include "partref/oracle.hh"

namespace partref {

MinimizeResult minimize_spec(const Coalgebra& sys, const MinimizeOptions& options) {
    EncodedCoalgebra enc = encode(sys, options.factor);
    if (options.initial_classes) apply_initial_partition(enc, *options.initial_classes);
    if (options.oracle && enc.num_states > options.oracle_cap)
        throw UsageError("oracle cross-check is limited to " + std::to_string(options.oracle_cap) +
                         " encoded states, this system has " + std::to_string(enc.num_states));

    MinimizeResult result;
    const std::vector<std::uint32_t> block_of = minimize(enc, &result.stats, options.engine);
    result.blocks = project_result(enc, block_of);
    if (options.oracle) {
        const NaivePartition naive = naive_minimize(enc);
        result.oracle_ran = true;
        result.oracle_iterations = naive.iterations;
        result.oracle_agrees = partitions_equal(naive, block_of, enc.num_states);
    }
    return result;
}

Coalgebra parse_coalgebra_any(std::string_view text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
        if (c == '{') return parse_coalgebra_json(text);
        break;
    }
    return parse_coalgebra(text);
}

}  // namespace partref
