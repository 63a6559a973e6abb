#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "partref/errors.hh"
#include "partref/generator.hh"
#include "partref/oracle.hh"
#include "partref/pipeline.hh"
#include "partref/selfcheck.hh"

namespace py = pybind11;
using namespace partref;

namespace {

std::vector<std::vector<std::string>> named_blocks(const Coalgebra& sys,
                                                   const std::vector<std::vector<StateIdx>>& blocks) {
    std::vector<std::vector<std::string>> out;
    for (const auto& b : blocks) {
        out.emplace_back();
        for (StateIdx x : b) out.back().push_back(sys.states[x].name);
    }
    return out;
}

py::dict stats_dict(const RunStats& s) {
    py::dict d;
    d["states"] = s.states;
    d["edges"] = s.edges;
    d["initial_blocks"] = s.initial_blocks;
    d["final_blocks"] = s.final_blocks;
    d["compound_splits"] = s.compound_splits;
    d["max_subblock_memberships"] = s.max_subblock_memberships;
    d["middle_block_total"] = s.middle_block_total;
    d["marked_states"] = s.marked_states;
    d["moved_states"] = s.moved_states;
    d["weight_cells"] = s.weight_cells;
    d["grouping_sorted_items"] = s.grouping.sorted_items;
    d["wall_seconds"] = s.wall_seconds;
    return d;
}

MinimizeResult run(const Coalgebra& sys, const std::optional<std::string>& initial, bool oracle,
                   const std::string& checks) {
    MinimizeOptions options;
    options.oracle = oracle;
    if (checks == "structural") options.engine.checks = InvariantChecks::Structural;
    else if (checks == "full") options.engine.checks = InvariantChecks::Full;
    else if (checks != "none") throw UsageError("checks must be none, structural or full");
    if (initial) options.initial_classes = parse_initial_partition(*initial, sys);
    py::gil_scoped_release release;
    return minimize_spec(sys, options);
}

}  // namespace

PYBIND11_MODULE(_partref, m) {
    m.doc() = "Partition refinement for systems of composite transition types";

    // Translators run newest first, so the base class goes first.
    auto& base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<UsageError>(m, "UsageError", base.ptr());
    py::register_exception<OverflowError>(m, "OverflowError", base.ptr());

    m.def(
        "minimize",
        [](const std::string& text, std::optional<std::string> initial, const std::string& checks) {
            const Coalgebra sys = parse_coalgebra_any(text);
            return named_blocks(sys, run(sys, initial, false, checks).blocks);
        },
        py::arg("text"), py::arg("initial") = py::none(), py::arg("checks") = "none",
        "Blocks of behaviourally equivalent states, as lists of names.");

    m.def(
        "minimize_with_stats",
        [](const std::string& text, std::optional<std::string> initial) {
            const Coalgebra sys = parse_coalgebra_any(text);
            const MinimizeResult r = run(sys, initial, false, "none");
            return py::make_tuple(named_blocks(sys, r.blocks), stats_dict(r.stats));
        },
        py::arg("text"), py::arg("initial") = py::none());

    m.def(
        "quotient",
        [](const std::string& text) {
            const Coalgebra sys = parse_coalgebra_any(text);
            return print_coalgebra(quotient(sys, run(sys, std::nullopt, false, "none").blocks));
        },
        py::arg("text"), "The minimized system in the text format.");

    m.def(
        "oracle",
        [](const std::string& text) {
            const Coalgebra sys = parse_coalgebra_any(text);
            const EncodedCoalgebra enc = encode(sys);
            const NaivePartition naive = naive_minimize(enc);
            return named_blocks(sys, project_result(enc, naive.block));
        },
        py::arg("text"), "Blocks computed by the brute-force minimizer.");

    m.def(
        "cross_check",
        [](const std::string& text) {
            const Coalgebra sys = parse_coalgebra_any(text);
            return run(sys, std::nullopt, true, "none").oracle_agrees;
        },
        py::arg("text"), "True when the engine and the brute-force minimizer agree.");

    m.def(
        "generate",
        [](const std::string& functor, std::size_t states, std::size_t edges, std::uint64_t seed,
           std::uint32_t set_size) {
            GeneratorOptions g;
            g.functor = functor;
            g.states = states;
            g.edges = edges;
            g.seed = seed;
            g.set_size = set_size;
            return generate_text(g);
        },
        py::arg("functor"), py::arg("states"), py::arg("edges"), py::arg("seed"), py::arg("set_size") = 3);

    m.def(
        "check",
        [](std::vector<std::string> interfaces, std::size_t cases, std::uint64_t seed) {
            SelfCheckOptions options;
            options.interfaces = std::move(interfaces);
            options.axiom_cases = cases;
            options.seed = seed;
            const SelfCheckReport r = run_self_check(options);
            return py::make_tuple(r.ok, r.lines);
        },
        py::arg("interfaces"), py::arg("cases") = 1000, py::arg("seed") = 1);
}
