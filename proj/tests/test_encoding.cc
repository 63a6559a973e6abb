#include <catch2/catch.hpp>

#include <algorithm>
#include <set>

#include "fixtures.hh"
#include "partref/coalgebra.hh"
#include "partref/encoding.hh"
#include "partref/engine.hh"
#include "partref/errors.hh"
#include "partref/functor.hh"
#include "partref/oracle.hh"
#include "partref/pipeline.hh"

using namespace partref;

namespace {

std::vector<LayerKind> kinds(const SortTable& table) {
    std::vector<LayerKind> out;
    for (const SortDescriptor& d : table.sorts) out.push_back(d.kind);
    return out;
}

SortTable flatten_text(const FunctorTerm& term, const FiniteSets& sets) { return flatten(term, sets); }

FiniteSets alphabet_a() {
    FiniteSets sets;
    sets.declare("A", {"a", "b"});
    return sets;
}

std::size_t count_sort(const FactoredCoalgebra& f, SortIdx sort) {
    return static_cast<std::size_t>(std::count(f.sort_of.begin(), f.sort_of.end(), sort));
}

}  // namespace

TEST_CASE("functor terms parse into trees") {
    const FunctorTerm p = parse_functor_term("P X");
    CHECK(p.kind == TermKind::Powerset);
    REQUIRE(p.children.size() == 1);
    CHECK(p.children[0].kind == TermKind::Argument);

    const FunctorTerm segala = parse_functor_term("P (D (A x X))");
    REQUIRE(segala.kind == TermKind::Powerset);
    const FunctorTerm& d = segala.children[0];
    REQUIRE(d.kind == TermKind::Dist);
    const FunctorTerm& prod = d.children[0];
    REQUIRE(prod.kind == TermKind::Product);
    REQUIRE(prod.children.size() == 2);
    CHECK(prod.children[0].kind == TermKind::Const);
    CHECK(prod.children[0].name == "A");
    CHECK(prod.children[1].kind == TermKind::Argument);

    const FunctorTerm dfa = parse_functor_term("(2 x X^A)");
    REQUIRE(dfa.kind == TermKind::Product);
    CHECK(dfa.children[0].kind == TermKind::Const);
    CHECK(dfa.children[0].name == "2");
    REQUIRE(dfa.children[1].kind == TermKind::Exponent);
    CHECK(dfa.children[1].name == "A");
    CHECK(dfa.children[1].children[0].kind == TermKind::Argument);

    CHECK(parse_functor_term(to_string(segala)).kind == TermKind::Powerset);
}

TEST_CASE("malformed functor terms report a column") {
    try {
        parse_functor_term("P (X x");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() >= 6);
    }
    CHECK_THROWS_AS(parse_functor_term("P P"), ParseError);
    CHECK_THROWS_AS(parse_functor_term(""), ParseError);
}

TEST_CASE("flatten yields one sort per subterm layer") {
    FiniteSets sets = alphabet_a();

    const FunctorTerm p = parse_functor_term("P X");
    const SortTable single = flatten_text(p, sets);
    REQUIRE(single.size() == 1);
    CHECK(single[0].kind == LayerKind::Powerset);
    CHECK(single[0].child == 0);

    const FunctorTerm mixed = parse_functor_term("P ((B X) x (D (A x X)))");
    const SortTable five = flatten_text(mixed, sets);
    REQUIRE(five.size() == 5);
    CHECK(kinds(five) == std::vector<LayerKind>{LayerKind::Powerset, LayerKind::Polynomial, LayerKind::Bag,
                                                LayerKind::Distribution, LayerKind::Polynomial});
    CHECK(five[0].child == 1);
    REQUIRE(five[1].arg_sorts.size() == 1);
    CHECK(five[1].arg_sorts[0] == std::vector<SortIdx>{2, 3});
    CHECK(five[2].child == 0);
    CHECK(five[3].child == 4);
    REQUIRE(five[4].arg_sorts.size() == 2);  // one symbol per letter
    CHECK(five[4].arg_sorts[0] == std::vector<SortIdx>{0});

    const FunctorTerm twice = parse_functor_term("P X x P X");
    CHECK(flatten_text(twice, sets).size() == 3);

    const FunctorTerm alternating = parse_functor_term("(D X + P (A x X))");
    const SortTable four = flatten_text(alternating, sets);
    CHECK(kinds(four) == std::vector<LayerKind>{LayerKind::Polynomial, LayerKind::Distribution, LayerKind::Powerset,
                                                LayerKind::Polynomial});
    REQUIRE(four[0].signature.size() == 2);
    CHECK(four[0].signature[0].arity == 1);
    CHECK(four[0].signature[1].arity == 1);

    const FunctorTerm no_x = parse_functor_term("P A");
    CHECK_THROWS_AS(flatten_text(no_x, sets), Error);
    const FunctorTerm unknown = parse_functor_term("P (C x X)");
    CHECK_THROWS_AS(flatten_text(unknown, sets), Error);
}

TEST_CASE("factor shares equal sub-values") {
    SECTION("single sort: no intermediate states") {
        const Coalgebra sys = parse_coalgebra("functor: P X\nstate q: {q}\n");
        const SortTable sorts = flatten(*sys.functor, sys.sets);
        const FactoredCoalgebra f = factor(sys, sorts);
        CHECK(f.size() == 1);
        CHECK(f.layers[0].targets == std::vector<StateIdx>{0});
    }
    SECTION("two states with the same labelled successor") {
        const Coalgebra sys =
            parse_coalgebra("functor: P (A x X)\nalphabet A: a b\nstate q0: {(a, q0)}\nstate q1: {(a, q0)}\n");
        const SortTable sorts = flatten(*sys.functor, sys.sets);
        CHECK(count_sort(factor(sys, sorts), 1) == 1);
        CHECK(count_sort(factor(sys, sorts, FactorOptions{false}), 1) == 2);
    }
    SECTION("labelled transition system: one intermediate state per distinct (label, target)") {
        const std::string text =
            "functor: P (A x X)\nalphabet A: a b c\n"
            "state s0: {(a, s1), (b, s1), (a, s2)}\n"
            "state s1: {(a, s1), (c, s0)}\n"
            "state s2: {(a, s2), (b, s1), (a, s1)}\n"
            "state s3: {}\n";
        const Coalgebra sys = parse_coalgebra(text);
        const SortTable sorts = flatten(*sys.functor, sys.sets);
        // Walk the parsed values and collect the pairs directly.
        std::set<std::pair<std::uint32_t, StateIdx>> pairs;
        std::size_t edges = 0;
        for (const StateDecl& s : sys.states)
            for (const Value& pair : s.value.children) {
                pairs.emplace(pair.children.at(0).index, pair.children.at(1).index);
                ++edges;
            }
        CHECK(edges == 8);
        CHECK(count_sort(factor(sys, sorts), 1) == pairs.size());
    }
}

TEST_CASE("recompose inverts factor") {
    const Coalgebra sys = parse_coalgebra(fixtures::read("nested.txt"));
    const SortTable sorts = flatten(*sys.functor, sys.sets);
    const FactoredCoalgebra f = factor(sys, sorts);
    for (StateIdx x = 0; x < sys.size(); ++x) {
        Value expected = sys.states[x].value;
        canonicalize_value(*sys.functor, expected);
        CHECK(recompose(f, sorts, sys.sets, x) == expected);
    }
}

TEST_CASE("desort") {
    SECTION("single-sort powerset: unit labels") {
        const EncodedCoalgebra enc = encode(parse_coalgebra(fixtures::read("five_states.txt")));
        CHECK(enc.num_states == 5);
        CHECK(enc.num_edges() == 6);
        for (const Edge& e : enc.edges) CHECK(e.label == Label{0, 1});
    }
    SECTION("weighted edges keep their weights") {
        const EncodedCoalgebra enc = encode(parse_coalgebra(fixtures::read("five_weighted.txt")));
        std::multiset<std::string> got;
        for (const Edge& e : enc.edges) got.insert(e.label.value.to_string());
        CHECK(got == std::multiset<std::string>{"1/2", "1", "3/2", "1", "1", "-1"});
    }
    SECTION("alternating systems: four sorts") {
        const Coalgebra sys = parse_coalgebra(
            "functor: (D X + P (A x X))\nalphabet A: a b\n"
            "state p: in1({q: 1/2, p: 1/2})\nstate q: in2({(a, p), (b, q)})\n");
        const EncodedCoalgebra enc = encode(sys);
        CHECK(enc.sort_kinds == std::vector<LayerKind>{LayerKind::Polynomial, LayerKind::Distribution,
                                                       LayerKind::Powerset, LayerKind::Polynomial});
        CHECK(enc.iface->num_sorts() == 4);
        CHECK(enc.num_original == 2);
        // Original states come first.
        CHECK(enc.sort_of[0] == 0);
        CHECK(enc.sort_of[1] == 0);
        for (std::size_t x = 2; x < enc.num_states; ++x) CHECK(enc.sort_of[x] != 0);
    }
}

TEST_CASE("coalgebra files") {
    SECTION("text and JSON agree") {
        const Coalgebra text = parse_coalgebra(fixtures::read("five_weighted.txt"));
        const Coalgebra json = parse_coalgebra_json(R"({
            "functor": "Q X",
            "states": [
                {"name": "x0", "value": [["x1", "1/2"], ["x2", "3/2"]]},
                {"name": "x1", "value": [["x1", 1], ["x2", 1]]},
                {"name": "x2", "value": [["x3", 1], ["x4", -1]]},
                {"name": "x3", "value": []},
                {"name": "x4", "value": []}
            ]})");
        REQUIRE(json.size() == text.size());
        for (StateIdx x = 0; x < text.size(); ++x) CHECK(json.states[x].value == text.states[x].value);
    }
    SECTION("printing and re-parsing is stable") {
        const Coalgebra sys = parse_coalgebra(fixtures::read("nested.txt"));
        const std::string once = print_coalgebra(sys);
        CHECK(print_coalgebra(parse_coalgebra(once)) == once);
    }
    SECTION("errors carry positions") {
        try {
            parse_coalgebra(fixtures::read("malformed.txt"));
            FAIL("no error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
        CHECK_THROWS_AS(parse_coalgebra("functor: D X\nstate p: {p: 1/2}\n"), ParseError);
        CHECK_THROWS_AS(parse_coalgebra("functor: Z X\nstate p: {p: 1/2}\n"), ParseError);
        CHECK_THROWS_AS(parse_coalgebra("functor: P X\nstate p: {q}\n"), ParseError);
        CHECK_THROWS_AS(parse_coalgebra("functor: P X\nstate p: {}\nstate p: {}\n"), ParseError);
        CHECK_THROWS_AS(parse_coalgebra_json(R"({"functor": "Q X", "states": [{"name": "p", "value": [["p", 0.5]]}]})"),
                        ParseError);
    }
}

TEST_CASE("initial partitions") {
    const Coalgebra sys = parse_coalgebra(fixtures::read("five_states.txt"));
    auto run = [&](std::vector<std::uint32_t> classes) {
        EncodedCoalgebra enc = encode(sys);
        apply_initial_partition(enc, classes);
        const std::vector<std::uint32_t> blocks = minimize(enc);
        const NaivePartition naive = naive_minimize(enc);
        CHECK(partitions_equal(naive, blocks, enc.num_states));
        return fixtures::named(project_result(enc, blocks), sys);
    };
    const fixtures::Names plain = {{"x0", "x1"}, {"x2"}, {"x3", "x4"}};
    CHECK(run({0, 0, 0, 0, 0}) == plain);
    CHECK(run({0, 1, 2, 3, 4}) == fixtures::Names{{"x0"}, {"x1"}, {"x2"}, {"x3"}, {"x4"}});
    // Checked against the oracle inside run().
    const fixtures::Names split = run({0, 0, 0, 0, 1});
    CHECK(std::find(split.begin(), split.end(), std::vector<std::string>{"x3"}) != split.end());
    CHECK(std::find(split.begin(), split.end(), std::vector<std::string>{"x4"}) != split.end());

    const auto classes = parse_initial_partition(fixtures::read("five_states_x3.part"), sys);
    CHECK(classes == std::vector<std::uint32_t>{0, 0, 0, 1, 0});
    CHECK_THROWS_AS(parse_initial_partition("x9\n", sys), ParseError);
    CHECK_THROWS_AS(parse_initial_partition("x1\nx1\n", sys), ParseError);
}

TEST_CASE("project_result") {
    const Coalgebra a = parse_coalgebra(fixtures::read("five_states.txt"));
    CHECK(fixtures::named(minimize_spec(a).blocks, a) == fixtures::Names{{"x0", "x1"}, {"x2"}, {"x3", "x4"}});
    const Coalgebra b = parse_coalgebra(fixtures::read("five_weighted.txt"));
    CHECK(fixtures::named(minimize_spec(b).blocks, b) == fixtures::Names{{"x0"}, {"x1"}, {"x2", "x3", "x4"}});
    const Coalgebra one = parse_coalgebra("functor: P X\nstate only: {only}\n");
    CHECK(fixtures::named(minimize_spec(one).blocks, one) == fixtures::Names{{"only"}});
}
