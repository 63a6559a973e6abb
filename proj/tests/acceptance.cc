// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "partref/engine.hh"
#include "partref/generator.hh"
#include "partref/oracle.hh"
#include "partref/pipeline.hh"
#include "partref/random.hh"
#include "partref/reference.hh"
#include "partref/selfcheck.hh"

using namespace partref;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string read(const std::string& name) {
    std::ifstream in(std::string(PARTREF_TEST_DATA) + "/" + name, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string names_of(const EncodedCoalgebra& enc, std::span<const std::uint32_t> block_of) {
    std::string text = format_partition(project_result(enc, block_of), enc.names);
    std::replace(text.begin(), text.end(), '\n', '/');
    return text;
}

bool report(int id, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
    return ok;
}

struct CounterCheck {
    std::size_t runs = 0;
    std::size_t violations = 0;
    std::string first;

    void add(const RunStats& s, const std::string& where) {
        ++runs;
        const std::size_t n = s.states;
        const std::size_t log_bound = static_cast<std::size_t>(std::floor(std::log2(std::max<std::size_t>(n, 1)))) + 1;
        std::string bad;
        if (n > 0 && s.compound_splits > n - 1) bad += " k=" + std::to_string(s.compound_splits);
        if (s.max_subblock_memberships > log_bound) bad += " memberships=" + std::to_string(s.max_subblock_memberships);
        if (s.middle_block_total > s.edges) bad += " middle=" + std::to_string(s.middle_block_total);
        if (bad.empty()) return;
        if (violations++ == 0) first = where + bad;
    }
};

// Initial grouping and final partition of a worked example.
bool worked_example(int id, const std::string& file, const std::string& initial, const std::string& final,
                    double time_limit) {
    const Coalgebra sys = parse_coalgebra(read(file));
    const EncodedCoalgebra enc = encode(sys);
    Engine first(enc, {InvariantChecks::Full});
    first.initialize();
    const std::string p0 = names_of(enc, first.block_assignment());
    first.run();
    const std::string result = names_of(enc, first.block_assignment());

    std::vector<double> times;
    for (int i = 0; i < 11; ++i) {
        const auto t = Clock::now();
        const EncodedCoalgebra again = encode(parse_coalgebra(read(file)));
        minimize(again);
        times.push_back(since(t));
    }
    std::sort(times.begin(), times.end());
    const double median = times[times.size() / 2];
    const bool ok = p0 == initial && result == final && (time_limit <= 0 || median < time_limit);
    std::ostringstream detail;
    detail << "initial " << p0 << " final " << result << " median " << median * 1e3 << " ms";
    return report(id, ok, detail.str());
}

struct Family {
    std::string functor;
};

struct CorpusResult {
    std::size_t instances = 0;
    std::size_t agree = 0;
    std::size_t max_states = 0;
    std::size_t max_occurrences = 0;
    std::size_t max_encoded_edges = 0;
    std::string first_mismatch;
    std::string transcript;
    double seconds = 0;
};

const std::vector<std::string> kFamilies = {"P X",       "B X",           "D X",
                                            "Z X",       "(2 x X^A)",     "P (A x X)",
                                            "P (D (A x X))", "(D X + P (A x X))"};

// Minimum and maximum X occurrences per state of each family, as the generator sees them.
std::pair<std::size_t, std::size_t> occurrence_range(const std::string& functor, std::size_t letters) {
    if (functor == "D X") return {1, 300};
    if (functor == "(2 x X^A)") return {letters, letters};
    return {0, 300};
}

CorpusResult run_corpus(bool with_oracle, CounterCheck* counters) {
    CorpusResult out;
    const auto start = Clock::now();
    const std::uint32_t letters = 3;
    for (std::size_t f = 0; f < kFamilies.size(); ++f) {
        for (std::uint64_t i = 0; i < 1000; ++i) {
            Rng rng(1000003 * (f + 1) + i);
            GeneratorOptions g;
            g.functor = kFamilies[f];
            g.seed = rng.next();
            g.set_size = letters;
            g.states = static_cast<std::size_t>(rng.uniform(1, 50));
            const auto [lo, hi] = occurrence_range(g.functor, letters);
            const std::size_t min_m = lo * g.states;
            const std::size_t max_m = std::min<std::size_t>(300, hi * g.states);
            g.edges = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(min_m), static_cast<std::int64_t>(max_m)));

            const Coalgebra sys = generate(g);
            const EncodedCoalgebra enc = encode(sys);
            RunStats stats;
            const std::vector<std::uint32_t> block = minimize(enc, &stats);
            const std::string where = g.functor + " #" + std::to_string(i);
            if (counters) counters->add(stats, where);
            ++out.instances;
            out.max_states = std::max(out.max_states, g.states);
            out.max_occurrences = std::max(out.max_occurrences, g.edges);
            out.max_encoded_edges = std::max(out.max_encoded_edges, enc.num_edges());
            out.transcript += where + "\n" + format_partition(project_result(enc, block), enc.names);
            if (with_oracle) {
                if (partitions_equal(naive_minimize(enc), block, enc.num_states))
                    ++out.agree;
                else if (out.first_mismatch.empty())
                    out.first_mismatch = where;
            }
        }
    }
    out.seconds = since(start);
    return out;
}

}  // namespace

int main() {
    bool all = true;

    all &= worked_example(1, "five_states.txt", "x0 x1 x2/x3 x4/", "x0 x1/x2/x3 x4/", 1e-3);
    all &= worked_example(2, "five_weighted.txt", "x0 x1/x2 x3 x4/", "x0/x1/x2 x3 x4/", 0);

    {
        const Coalgebra sys = parse_coalgebra(read("nested.txt"));
        const EncodedCoalgebra enc = encode(sys);
        const std::vector<std::uint32_t> block = minimize(enc, nullptr, {InvariantChecks::Full});
        const bool apart = block[sys.state_index.at("a1")] != block[sys.state_index.at("b1")];
        const bool oracle = partitions_equal(naive_minimize(enc), block, enc.num_states);
        all &= report(3, apart && oracle,
                      std::string("a1 and b1 ") + (apart ? "separated" : "merged") + ", oracle " +
                          (oracle ? "agrees" : "disagrees") + " (" + std::to_string(enc.num_states) + " encoded states)");
    }

    CounterCheck counters;
    const CorpusResult corpus = run_corpus(true, &counters);
    {
        std::ostringstream detail;
        detail << corpus.agree << "/" << corpus.instances << " instances agree with the oracle over " << kFamilies.size()
               << " families, max n=" << corpus.max_states << ", max X occurrences=" << corpus.max_occurrences
               << ", max encoded edges=" << corpus.max_encoded_edges << ", " << corpus.seconds << " s";
        if (!corpus.first_mismatch.empty()) detail << ", first mismatch " << corpus.first_mismatch;
        all &= report(4, corpus.agree == corpus.instances && corpus.seconds < 120, detail.str());
    }

    {
        bool ok = true;
        std::ostringstream detail;
        for (const AxiomTarget& t : shipped_axiom_targets()) {
            const AxiomReport r = check_axioms(t, 20240601, 10000);
            ok = ok && r.ok() && r.cases >= 10000;
            detail << t.name << "=" << (r.cases - std::max(r.init_failures, r.update_failures)) << "/" << r.cases << " ";
            if (!r.ok()) detail << "(" << r.first_failure << ") ";
        }
        all &= report(5, ok, detail.str());
    }

    {
        GeneratorOptions g;
        g.functor = "P (A x X)";
        g.states = 100000;
        g.edges = 500000;
        g.seed = 6;
        g.set_size = 4;
        const Coalgebra sys = generate(g);
        const auto t = Clock::now();
        const EncodedCoalgebra enc = encode(sys);
        RunStats stats;
        minimize(enc, &stats);
        const double seconds = since(t);
        counters.add(stats, "large LTS");
        std::ostringstream detail;
        detail << counters.runs << " runs, " << counters.violations << " bound violations";
        if (counters.violations) detail << " (first: " << counters.first << ")";
        detail << "; large LTS n=" << g.states << " m=" << g.edges << " (encoded " << stats.states << " states, "
               << stats.edges << " edges): k=" << stats.compound_splits << " max memberships="
               << stats.max_subblock_memberships << " middle=" << stats.middle_block_total << " blocks="
               << stats.final_blocks << " in " << seconds << " s";
        all &= report(6, counters.violations == 0 && seconds < 30, detail.str());
    }

    {
        GroupingStats stats;
        const std::string mismatch = grouping_differential(77, 10000, &stats);
        all &= report(7, mismatch.empty(),
                      mismatch.empty() ? "10000 multisets grouped like sort-and-group, sorted items within 2x minority (" +
                                             std::to_string(stats.sorted_items) + " sorted of " +
                                             std::to_string(stats.items) + ")"
                                       : mismatch);
    }

    {
        const CorpusResult again = run_corpus(false, nullptr);
        const bool same = again.transcript == corpus.transcript;
        all &= report(8, same,
                      std::to_string(again.instances) + " instances re-run, transcript of " +
                          std::to_string(corpus.transcript.size()) + " bytes " + (same ? "identical" : "differs"));
    }

    return all ? 0 : 1;
}
