#include "partref/oracle.hh"

#include <map>
#include <string>

#include "partref/errors.hh"

namespace partref {

namespace {

std::vector<std::uint32_t> group_by(const std::vector<std::string>& keys, std::size_t& num_blocks) {
    std::map<std::string, std::uint32_t> ids;
    std::vector<std::uint32_t> out(keys.size());
    for (std::size_t x = 0; x < keys.size(); ++x) {
        auto [it, fresh] = ids.emplace(keys[x], static_cast<std::uint32_t>(ids.size()));
        out[x] = it->second;
    }
    num_blocks = ids.size();
    return out;
}

}  // namespace

NaivePartition naive_minimize(const EncodedCoalgebra& enc) {
    const std::size_t n = enc.num_states;
    const CoproductInterface& iface = *enc.iface;
    NaivePartition result;
    std::vector<std::string> keys(n);
    for (StateIdx x = 0; x < n; ++x) keys[x] = iface.serialize_type(enc.types[x]);
    result.block = group_by(keys, result.num_blocks);

    std::vector<SignatureEdge> edges;
    while (true) {
        for (StateIdx x = 0; x < n; ++x) {
            edges.clear();
            for (const Edge& e : enc.out_edges(x)) edges.push_back({e.label, result.block[e.target]});
            keys[x] = iface.oracle_signature(enc.types[x], edges);
        }
        std::size_t count = 0;
        std::vector<std::uint32_t> next = group_by(keys, count);
        std::vector<std::uint32_t> parent(count, UINT32_MAX);
        for (StateIdx x = 0; x < n; ++x) {
            std::uint32_t& p = parent[next[x]];
            if (p == UINT32_MAX) p = result.block[x];
            if (p != result.block[x]) throw InvariantError("oracle round is not a refinement");
        }
        if (count == result.num_blocks) break;
        result.block = std::move(next);
        result.num_blocks = count;
        ++result.iterations;
        if (result.iterations > n) throw InvariantError("oracle did not reach a fixpoint within n rounds");
    }
    return result;
}

std::vector<std::uint32_t> canonical_blocks(std::span<const std::uint32_t> block_of, std::size_t count) {
    std::map<std::uint32_t, std::uint32_t> renumber;
    std::vector<std::uint32_t> out(count);
    for (std::size_t x = 0; x < count; ++x) {
        auto [it, fresh] = renumber.emplace(block_of[x], static_cast<std::uint32_t>(renumber.size()));
        out[x] = it->second;
    }
    return out;
}

bool partitions_equal(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, std::size_t count) {
    return canonical_blocks(a, count) == canonical_blocks(b, count);
}

bool partitions_equal(const NaivePartition& a, std::span<const std::uint32_t> b, std::size_t count) {
    return partitions_equal(std::span<const std::uint32_t>(a.block), b, count);
}

}  // namespace partref
