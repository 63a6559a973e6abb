#include <catch2/catch.hpp>

#include "fixtures.hh"
#include "partref/oracle.hh"

using namespace partref;

TEST_CASE("naive minimizer") {
    const Coalgebra a = parse_coalgebra(fixtures::read("five_states.txt"));
    const EncodedCoalgebra ea = encode(a);
    const NaivePartition na = naive_minimize(ea);
    CHECK(fixtures::named(project_result(ea, na.block), a) == fixtures::Names{{"x0", "x1"}, {"x2"}, {"x3", "x4"}});
    CHECK(na.num_blocks == 3);

    // Distinct types everywhere: nothing left to refine.
    const Coalgebra discrete = parse_coalgebra("functor: Z X\nstate p: {p: 1}\nstate q: {q: 2}\nstate r: {}\n");
    const NaivePartition nd = naive_minimize(encode(discrete));
    CHECK(nd.iterations == 0);
    CHECK(nd.num_blocks == 3);

    const Coalgebra nested = parse_coalgebra(fixtures::read("nested.txt"));
    const NaivePartition nn = naive_minimize(encode(nested));
    CHECK(nn.block[nested.state_index.at("a1")] != nn.block[nested.state_index.at("b1")]);
}

TEST_CASE("partition comparison") {
    const std::vector<std::uint32_t> p = {4, 4, 9, 2};
    CHECK(partitions_equal(p, p, 4));
    CHECK(partitions_equal(p, std::vector<std::uint32_t>{0, 0, 1, 2}, 4));
    CHECK_FALSE(partitions_equal(std::vector<std::uint32_t>{0, 1, 2, 3}, p, 4));
    CHECK(partitions_equal(std::vector<std::uint32_t>{0, 1, 2, 3}, p, 1));
    CHECK(canonical_blocks(p, 4) == std::vector<std::uint32_t>{0, 0, 1, 2});
}
