#include <catch2/catch.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "partref/errors.hh"
#include "partref/grouping.hh"
#include "partref/partition.hh"
#include "partref/selfcheck.hh"

using namespace partref;

namespace {

std::set<StateIdx> members(const RefinablePartition& p, BlockId b) {
    return {p.members(b).begin(), p.members(b).end()};
}

RefinablePartition from_keys(std::vector<std::string> keys) {
    return RefinablePartition::from_grouping(keys.size(), keys);
}

}  // namespace

TEST_CASE("from_grouping puts equal keys together") {
    RefinablePartition same = from_keys({"k", "k", "k"});
    CHECK(same.num_blocks() == 1);
    CHECK(members(same, 0) == std::set<StateIdx>{0, 1, 2});

    RefinablePartition two = from_keys({"a", "b", "a"});
    REQUIRE(two.num_blocks() == 2);
    CHECK(two.block_of(0) == two.block_of(2));
    CHECK(two.block_of(0) != two.block_of(1));
    CHECK(members(two, two.block_of(0)) == std::set<StateIdx>{0, 2});
    CHECK(members(two, two.block_of(1)) == std::set<StateIdx>{1});

    RefinablePartition empty = from_keys({});
    CHECK(empty.num_blocks() == 0);
    CHECK(empty.num_states() == 0);
}

TEST_CASE("mark moves states into the marked prefix") {
    RefinablePartition p = RefinablePartition::single_block(3);
    p.mark(1);
    CHECK(p.marked_count(0) == 1);
    CHECK(std::set<StateIdx>(p.marked_members(0).begin(), p.marked_members(0).end()) == std::set<StateIdx>{1});
    p.mark(2);
    CHECK(p.marked_count(0) == 2);
    CHECK(std::set<StateIdx>(p.marked_members(0).begin(), p.marked_members(0).end()) == std::set<StateIdx>{1, 2});
    CHECK(p.is_marked(1));
    CHECK_FALSE(p.is_marked(0));
    p.mark(0);
    CHECK(p.marked_count(0) == p.size(0));
    p.check_consistency();
}

TEST_CASE("split_marked_by_key") {
    SECTION("one key: the marked part becomes one block") {
        RefinablePartition p = RefinablePartition::single_block(3);
        p.mark(1);
        p.mark(2);
        const auto fresh = p.split_marked_by_key(0, [](StateIdx) { return std::string_view("u"); });
        REQUIRE(fresh.size() == 1);
        CHECK(members(p, 0) == std::set<StateIdx>{0});
        CHECK(members(p, fresh[0]) == std::set<StateIdx>{1, 2});
    }
    SECTION("everything marked retires the block") {
        RefinablePartition p = RefinablePartition::single_block(2);
        p.mark(0);
        p.mark(1);
        const auto fresh =
            p.split_marked_by_key(0, [](StateIdx x) { return std::string_view(x == 0 ? "u" : "v"); });
        REQUIRE(fresh.size() == 2);
        CHECK_FALSE(p.alive(0));
        CHECK(p.num_blocks() == 2);
        CHECK(members(p, fresh[0]) == std::set<StateIdx>{0});
        CHECK(members(p, fresh[1]) == std::set<StateIdx>{1});
    }
    SECTION("keys u v u") {
        RefinablePartition p = RefinablePartition::single_block(4);
        const std::vector<std::string> keys = {"", "u", "v", "u"};
        for (StateIdx x : {1u, 2u, 3u}) p.mark(x);
        const auto fresh = p.split_marked_by_key(0, [&](StateIdx x) -> std::string_view { return keys[x]; });
        // Naive grouping of the marked states by key.
        std::map<std::string, std::set<StateIdx>> expected;
        for (StateIdx x : {1u, 2u, 3u}) expected[keys[x]].insert(x);
        REQUIRE(fresh.size() == expected.size());
        std::size_t i = 0;
        for (const auto& [k, group] : expected) CHECK(members(p, fresh[i++]) == group);
        CHECK(members(p, 0) == std::set<StateIdx>{0});
        p.check_consistency();
    }
    SECTION("nothing marked is a no-op") {
        RefinablePartition p = RefinablePartition::single_block(2);
        CHECK(p.split_marked_by_key(0, [](StateIdx) { return std::string_view("u"); }).empty());
        CHECK(p.num_blocks() == 1);
    }
}

TEST_CASE("touched counts only moved states") {
    RefinablePartition p = RefinablePartition::single_block(1000);
    const auto before = p.touched();
    p.mark(7);
    p.mark(500);
    p.split_marked_by_key(0, [](StateIdx) { return std::string_view("u"); });
    CHECK(p.touched() - before <= 4);
}

TEST_CASE("select_subblock picks at most half of the compound") {
    SECTION("sizes 3 and 4") {
        RefinablePartition p = from_keys({"a", "a", "a", "b", "b", "b", "b"});
        CompoundTracker t(p);
        const auto sel = t.select_subblock(p);
        REQUIRE(sel);
        CHECK(p.size(sel->subblock) == 3);
        CHECK(2 * p.size(sel->subblock) <= t.compound_size(sel->compound));
    }
    SECTION("only singleton compounds") {
        RefinablePartition p = from_keys({"a", "a"});
        CompoundTracker t(p);
        CHECK_FALSE(t.select_subblock(p));
    }
    SECTION("sizes 1 and 1") {
        RefinablePartition p = from_keys({"a", "b"});
        CompoundTracker t(p);
        const auto sel = t.select_subblock(p);
        REQUIRE(sel);
        CHECK(p.size(sel->subblock) == 1);
    }
}

TEST_CASE("split_compound and register_new_blocks") {
    SECTION("three subblocks: the remainder is re-enqueued") {
        RefinablePartition p = from_keys({"a", "b", "b", "c", "c", "c"});
        CompoundTracker t(p);
        const auto sel = t.select_subblock(p);
        REQUIRE(sel);
        const BlockId s = sel->subblock;
        const CompoundId cs = t.split_compound(s, p);
        CHECK(t.subblocks(cs).size() == 1);
        CHECK(t.compound_size(cs) == p.size(s));
        const CompoundId rest = t.compound_of(s == 0 ? 1 : 0);
        CHECK(t.subblocks(rest).size() == 2);
        CHECK(t.queued(rest));
        CHECK_FALSE(t.queued(cs));
        t.check_consistency(p);

        // A fresh block split off inside the remainder joins it.
        const BlockId inner = t.subblocks(rest)[0];
        p.mark(p.members(inner)[0]);
        const auto fresh = p.split_marked_by_key(inner, [](StateIdx) { return std::string_view("x"); });
        t.register_new_blocks(inner, fresh, p);
        CHECK(t.compound_of(fresh[0]) == rest);
        CHECK(t.compound_size(rest) == 6 - p.size(s));
        t.check_consistency(p);
    }
    SECTION("two subblocks: two singleton compounds, nothing queued") {
        RefinablePartition p = from_keys({"a", "b", "b"});
        CompoundTracker t(p);
        const auto sel = t.select_subblock(p);
        REQUIRE(sel);
        t.split_compound(sel->subblock, p);
        CHECK(t.num_compounds() == 2);
        CHECK(t.worklist_size() == 0);
        CHECK_FALSE(t.select_subblock(p));
        t.check_consistency(p);
    }
    SECTION("splitting off the only subblock is rejected") {
        RefinablePartition p = from_keys({"a", "a"});
        CompoundTracker t(p);
        CHECK_THROWS_AS(t.split_compound(0, p), InvariantError);
    }
    SECTION("a retired parent leaves its compound") {
        RefinablePartition p = from_keys({"a", "a", "b"});
        CompoundTracker t(p);
        const CompoundId c = t.compound_of(0);
        p.mark(0);
        p.mark(1);
        const auto fresh = p.split_marked_by_key(0, [](StateIdx x) { return std::string_view(x ? "v" : "u"); });
        t.register_new_blocks(0, fresh, p);
        CHECK(t.subblocks(c).size() == 3);
        CHECK(std::find(t.subblocks(c).begin(), t.subblocks(c).end(), BlockId{0}) == t.subblocks(c).end());
        t.check_consistency(p);
    }
}

TEST_CASE("partition matches a list-of-sets model on random operation sequences") {
    CHECK(partition_differential(11, 300) == "");
}

TEST_CASE("group_by_pmc") {
    SECTION("u u u v: only the v item is sorted") {
        std::vector<std::string> items = {"u", "u", "v", "u"};
        GroupingStats stats;
        const auto bounds = group_by_pmc(items, [](const std::string& s) -> std::string_view { return s; }, &stats);
        CHECK(possible_majority_candidate(std::vector<std::string>{"u", "u", "u", "v"},
                                          [](const std::string& s) -> std::string_view { return s; }) == "u");
        CHECK(stats.sorted_items == 1);
        CHECK(bounds == std::vector<std::size_t>{0, 3, 4});
        CHECK(items == std::vector<std::string>{"u", "u", "u", "v"});
    }
    SECTION("u v: two singletons") {
        std::vector<std::string> items = {"v", "u"};
        const auto bounds = group_by_pmc(items, [](const std::string& s) -> std::string_view { return s; });
        CHECK(bounds == std::vector<std::size_t>{0, 1, 2});
        CHECK(items == std::vector<std::string>{"u", "v"});
    }
    SECTION("a key held by exactly half is found") {
        const std::vector<std::string> items = {"a", "b", "c", "b"};
        CHECK(possible_majority_candidate(items, [](const std::string& s) -> std::string_view { return s; }) == "b");
        const std::vector<std::string> first = {"b", "a", "b", "c"};
        CHECK(possible_majority_candidate(first, [](const std::string& s) -> std::string_view { return s; }) == "b");
    }
    SECTION("random multisets agree with sort-and-group") {
        GroupingStats stats;
        CHECK(grouping_differential(5, 2000, &stats) == "");
        CHECK(stats.calls == 2000);
    }
}
