#include "partref/selfcheck.hh"

#include <algorithm>
#include <map>
#include <set>

#include "partref/errors.hh"
#include "partref/partition.hh"
#include "partref/random.hh"
#include "partref/reference.hh"

namespace partref {

namespace {

std::vector<AxiomTarget> all_targets() {
    std::vector<AxiomTarget> targets = shipped_axiom_targets();
    targets.push_back(broken_axiom_target());
    return targets;
}

std::string describe(const std::vector<StateIdx>& states) {
    std::string out = "{";
    for (std::size_t i = 0; i < states.size(); ++i) out += (i ? " " : "") + std::to_string(states[i]);
    return out + "}";
}

}  // namespace

std::vector<std::string> known_interfaces() {
    std::vector<std::string> names;
    for (const AxiomTarget& t : all_targets()) names.push_back(t.name);
    return names;
}

std::string partition_differential(std::uint64_t seed, std::size_t rounds) {
    Rng rng(seed);
    for (std::size_t round = 0; round < rounds; ++round) {
        const std::size_t n = 1 + rng.index(40);
        std::vector<std::string> keys(n);
        for (std::string& k : keys) k = std::to_string(rng.index(3));
        RefinablePartition p = RefinablePartition::from_grouping(n, keys);
        CompoundTracker tracker(p);

        // Model: block id -> sorted members.
        std::map<BlockId, std::vector<StateIdx>> model;
        {
            std::map<std::string, std::vector<StateIdx>> by_key;
            for (StateIdx x = 0; x < n; ++x) by_key[keys[x]].push_back(x);
            BlockId id = 0;
            for (auto& [k, members] : by_key) model[id++] = members;
        }

        const std::string where = "round " + std::to_string(round) + ": ";
        for (std::size_t op = 0; op < 30; ++op) {
            if (rng.coin(1, 3)) {
                if (auto sel = tracker.select_subblock(p)) {
                    if (2 * p.size(sel->subblock) > tracker.compound_size(sel->compound))
                        return where + "selected subblock exceeds half of its compound";
                    tracker.split_compound(sel->subblock, p);
                }
            }
            const std::vector<BlockId> live = p.live_blocks();
            const BlockId b = live[rng.index(live.size())];
            std::vector<StateIdx> members(p.members(b).begin(), p.members(b).end());
            std::vector<StateIdx> marked;
            for (StateIdx x : members)
                if (rng.coin()) marked.push_back(x);
            std::vector<std::string> split_key(n);
            for (StateIdx x : marked) {
                p.mark(x);
                split_key[x] = std::to_string(rng.index(3));
            }
            if (p.marked_count(b) != marked.size()) return where + "marked count differs";
            const std::vector<BlockId> fresh =
                p.split_marked_by_key(b, [&](StateIdx x) -> std::string_view { return split_key[x]; });
            tracker.register_new_blocks(b, fresh, p);

            std::map<std::string, std::vector<StateIdx>> groups;
            for (StateIdx x : marked) groups[split_key[x]].push_back(x);
            std::vector<StateIdx>& rest = model[b];
            for (StateIdx x : marked) rest.erase(std::find(rest.begin(), rest.end(), x));
            if (rest.empty()) model.erase(b);
            if (fresh.size() != groups.size()) return where + "wrong number of fresh blocks";
            std::size_t g = 0;
            for (auto& [k, group] : groups) model[fresh[g++]] = group;

            if (p.num_blocks() != model.size()) return where + "block count differs from the model";
            for (auto& [id, expected] : model) {
                if (!p.alive(id)) return where + "block " + std::to_string(id) + " should be alive";
                std::vector<StateIdx> got(p.members(id).begin(), p.members(id).end());
                std::sort(got.begin(), got.end());
                std::sort(expected.begin(), expected.end());
                if (got != expected)
                    return where + "block " + std::to_string(id) + " is " + describe(got) + ", model " + describe(expected);
                for (StateIdx x : got)
                    if (p.block_of(x) != id) return where + "block_of disagrees with members";
            }
            try {
                p.check_consistency();
                tracker.check_consistency(p);
            } catch (const InvariantError& e) {
                return where + e.what();
            }
        }
    }
    return {};
}

std::string grouping_differential(std::uint64_t seed, std::size_t cases, GroupingStats* stats) {
    Rng rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = rng.index(60);
        const std::size_t alphabet = 1 + rng.index(6);
        const bool skewed = rng.coin();
        std::vector<std::string> keys(n);
        for (std::string& k : keys) k = skewed && rng.coin(2, 3) ? "k0" : "k" + std::to_string(rng.index(alphabet));

        std::vector<std::uint32_t> items(n);
        for (std::uint32_t i = 0; i < n; ++i) items[i] = i;
        GroupingStats local;
        const std::vector<std::size_t> bounds =
            group_by_pmc(items, [&](std::uint32_t i) -> std::string_view { return keys[i]; }, &local);
        if (stats) {
            stats->calls += local.calls;
            stats->items += local.items;
            stats->sorted_items += local.sorted_items;
            stats->comparisons += local.comparisons;
        }

        std::map<std::string, std::vector<std::uint32_t>> expected;
        for (std::uint32_t i = 0; i < n; ++i) expected[keys[i]].push_back(i);
        std::vector<std::vector<std::uint32_t>> got;
        for (std::size_t g = 0; g + 1 < bounds.size(); ++g)
            got.emplace_back(items.begin() + bounds[g], items.begin() + bounds[g + 1]);
        std::vector<std::vector<std::uint32_t>> want;
        std::size_t largest = 0;
        for (auto& [k, group] : expected) {
            want.push_back(group);
            largest = std::max(largest, group.size());
        }
        const std::string where = "case " + std::to_string(c) + ": ";
        if (got != want) return where + "grouping differs from sort-and-group";
        if (local.sorted_items > 2 * (n - largest))
            return where + std::to_string(local.sorted_items) + " sorted items, " + std::to_string(n - largest) +
                   " outside the largest group";
    }
    return {};
}

SelfCheckReport run_self_check(const SelfCheckOptions& options) {
    if (options.interfaces.empty()) throw UsageError("no interfaces selected");
    const std::vector<AxiomTarget> targets = all_targets();
    std::vector<const AxiomTarget*> selected;
    for (const std::string& name : options.interfaces) {
        auto it = std::find_if(targets.begin(), targets.end(), [&](const AxiomTarget& t) { return t.name == name; });
        if (it == targets.end()) throw UsageError("unknown interface '" + name + "'");
        selected.push_back(&*it);
    }

    SelfCheckReport report;
    for (const AxiomTarget* t : selected) {
        const AxiomReport r = check_axioms(*t, options.seed, options.axiom_cases);
        std::string line = (r.ok() ? "PASS axioms " : "FAIL axioms ") + r.name + " cases=" + std::to_string(r.cases) +
                           " init_failures=" + std::to_string(r.init_failures) +
                           " update_failures=" + std::to_string(r.update_failures);
        if (!r.ok()) line += " first: " + r.first_failure;
        report.lines.push_back(line);
        report.ok = report.ok && r.ok();
    }

    const std::string partition = partition_differential(options.seed, options.partition_rounds);
    report.lines.push_back(partition.empty() ? "PASS partition rounds=" + std::to_string(options.partition_rounds)
                                             : "FAIL partition " + partition);
    const std::string grouping = grouping_differential(options.seed, options.axiom_cases);
    report.lines.push_back(grouping.empty() ? "PASS grouping cases=" + std::to_string(options.axiom_cases)
                                            : "FAIL grouping " + grouping);
    report.ok = report.ok && partition.empty() && grouping.empty();
    return report;
}

}  // namespace partref
