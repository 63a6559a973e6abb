#include <catch2/catch.hpp>

#include <cmath>

#include "fixtures.hh"
#include "partref/engine.hh"
#include "partref/generator.hh"
#include "partref/oracle.hh"

using namespace partref;

namespace {

fixtures::Names blocks_of(const Engine& engine, const EncodedCoalgebra& enc, const Coalgebra& sys) {
    return fixtures::named(project_result(enc, engine.block_assignment()), sys);
}

}  // namespace

TEST_CASE("initialize groups states by type") {
    const Coalgebra a = parse_coalgebra(fixtures::read("five_states.txt"));
    const EncodedCoalgebra ea = encode(a);
    Engine pa(ea, {InvariantChecks::Full});
    pa.initialize();
    CHECK(blocks_of(pa, ea, a) == fixtures::Names{{"x0", "x1", "x2"}, {"x3", "x4"}});

    const Coalgebra b = parse_coalgebra(fixtures::read("five_weighted.txt"));
    const EncodedCoalgebra eb = encode(b);
    Engine pb(eb, {InvariantChecks::Full});
    pb.initialize();
    CHECK(blocks_of(pb, eb, b) == fixtures::Names{{"x0", "x1"}, {"x2", "x3", "x4"}});

    const Coalgebra dead = parse_coalgebra("functor: P X\nstate p: {}\nstate q: {}\nstate r: {}\n");
    const EncodedCoalgebra ed = encode(dead);
    Engine pd(ed);
    pd.initialize();
    CHECK(pd.partition().num_blocks() == 1);
    CHECK_FALSE(pd.step());
}

TEST_CASE("one split step") {
    SECTION("powerset: the deadlock block separates x2") {
        const Coalgebra a = parse_coalgebra(fixtures::read("five_states.txt"));
        const EncodedCoalgebra enc = encode(a);
        Engine engine(enc, {InvariantChecks::Full});
        engine.initialize();
        REQUIRE(engine.step());
        CHECK(blocks_of(engine, enc, a) == fixtures::Names{{"x0", "x1"}, {"x2"}, {"x3", "x4"}});
    }
    SECTION("weighted: weights into {x0, x1} separate x0 from x1") {
        const Coalgebra b = parse_coalgebra(fixtures::read("five_weighted.txt"));
        const EncodedCoalgebra enc = encode(b);
        Engine engine(enc, {InvariantChecks::Full});
        engine.initialize();
        REQUIRE(engine.step());
        CHECK(blocks_of(engine, enc, b) == fixtures::Names{{"x0"}, {"x1"}, {"x2", "x3", "x4"}});
    }
    SECTION("a subblock without predecessors changes nothing") {
        const Coalgebra sys = parse_coalgebra("functor: P X\nstate u: {v}\nstate v: {}\nstate w: {}\n");
        const EncodedCoalgebra enc = encode(sys);
        Engine engine(enc, {InvariantChecks::Full});
        engine.initialize();
        REQUIRE(engine.step());
        CHECK(blocks_of(engine, enc, sys) == fixtures::Names{{"u"}, {"v", "w"}});
        CHECK(engine.stats().marked_states == 0);
        CHECK_FALSE(engine.step());
    }
}

TEST_CASE("full runs") {
    const Coalgebra a = parse_coalgebra(fixtures::read("five_states.txt"));
    const EncodedCoalgebra ea = encode(a);
    Engine pa(ea, {InvariantChecks::Full});
    pa.run();
    CHECK(blocks_of(pa, ea, a) == fixtures::Names{{"x0", "x1"}, {"x2"}, {"x3", "x4"}});
    CHECK(pa.stats().compound_splits == 2);

    const Coalgebra b = parse_coalgebra(fixtures::read("five_weighted.txt"));
    const EncodedCoalgebra eb = encode(b);
    Engine pb(eb, {InvariantChecks::Full});
    pb.run();
    CHECK(blocks_of(pb, eb, b) == fixtures::Names{{"x0"}, {"x1"}, {"x2", "x3", "x4"}});

    const Coalgebra nested = parse_coalgebra(fixtures::read("nested.txt"));
    const EncodedCoalgebra en = encode(nested);
    Engine pn(en, {InvariantChecks::Full});
    pn.run();
    const auto block = pn.block_assignment();
    CHECK(block[nested.state_index.at("a1")] != block[nested.state_index.at("b1")]);
}

TEST_CASE("counters stay within their bounds and invariants hold on random systems") {
    const std::vector<std::string> families = {"P X", "B X", "D X", "Z X", "Q X", "(2 x X^A)", "P (A x X)",
                                               "P (D (A x X))", "(D X + P (A x X))", "P X x P X", "(2 x P (P X))"};
    for (const std::string& functor : families) {
        for (std::uint64_t seed = 1; seed <= 15; ++seed) {
            GeneratorOptions g;
            g.functor = functor;
            g.states = 4 + seed % 9;
            g.set_size = 2;
            g.edges = functor == "(2 x X^A)" ? 2 * g.states : g.states + seed * 2;
            g.seed = seed;
            const Coalgebra sys = generate(g);
            const EncodedCoalgebra enc = encode(sys);
            INFO(functor << " seed " << seed);
            RunStats stats;
            const auto block = minimize(enc, &stats, {enc.num_states <= 40 ? InvariantChecks::Full : InvariantChecks::Structural});
            CHECK(partitions_equal(naive_minimize(enc), block, enc.num_states));
            const std::size_t n = enc.num_states;
            CHECK(stats.compound_splits <= n - 1);
            CHECK(stats.max_subblock_memberships <= static_cast<std::size_t>(std::floor(std::log2(n))) + 1);
            CHECK(stats.middle_block_total <= enc.num_edges());
            CHECK(stats.smaller_half_violations == 0);
        }
    }
}
