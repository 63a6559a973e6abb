// partref: minimize systems, generate random instances, run self-checks.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "partref/errors.hh"
#include "partref/generator.hh"
#include "partref/pipeline.hh"
#include "partref/selfcheck.hh"

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kMismatch = 3, kResource = 4 };

class FileError : public partref::Error {
public:
    using partref::Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

partref::InvariantChecks parse_checks(const std::string& level) {
    if (level == "none") return partref::InvariantChecks::None;
    if (level == "structural") return partref::InvariantChecks::Structural;
    return partref::InvariantChecks::Full;
}

struct MinimizeArgs {
    std::string input;
    std::string output = "partition";
    std::string initial;
    std::string checks = "none";
    std::string format = "auto";
    bool oracle = false;
    bool stats = false;
    bool no_dedup = false;
};

int cmd_minimize(const MinimizeArgs& args) {
    const std::string text = read_file(args.input);
    const partref::Coalgebra sys = args.format == "json"   ? partref::parse_coalgebra_json(text)
                                        : args.format == "text" ? partref::parse_coalgebra(text)
                                                                : partref::parse_coalgebra_any(text);
    partref::MinimizeOptions options;
    options.factor.dedup = !args.no_dedup;
    options.engine.checks = parse_checks(args.checks);
    options.oracle = args.oracle;
    if (!args.initial.empty()) options.initial_classes = partref::parse_initial_partition(read_file(args.initial), sys);

    const partref::MinimizeResult result = partref::minimize_spec(sys, options);
    if (args.stats) {
        std::cerr << result.stats.to_text();
        if (result.oracle_ran) std::cerr << "oracle_iterations=" << result.oracle_iterations << "\n";
    }
    if (!result.oracle_agrees) {
        std::cerr << "error: engine and oracle partitions differ\n";
        return kMismatch;
    }

    std::vector<std::string> names;
    for (const partref::StateDecl& s : sys.states) names.push_back(s.name);
    std::string out;
    if (args.output != "coalgebra") out += partref::format_partition(result.blocks, names);
    if (args.output == "both") out += "\n";
    if (args.output != "partition") out += partref::print_coalgebra(partref::quotient(sys, result.blocks));
    std::cout << out;
    return kOk;
}

struct GenArgs {
    partref::GeneratorOptions options;
    std::string output;
};

int cmd_gen(const GenArgs& args) {
    const std::string text = partref::generate_text(args.options);
    if (args.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(args.output, std::ios::binary);
        if (!out) throw FileError("cannot write " + args.output);
        out << text;
    }
    return kOk;
}

struct CheckArgs {
    std::vector<std::string> interfaces = {"powerset", "int-group", "rat-group", "distribution",
                                           "bag",      "polynomial", "coproduct"};
    partref::SelfCheckOptions options;
};

int cmd_check(CheckArgs args) {
    args.options.interfaces = args.interfaces;
    const partref::SelfCheckReport report = partref::run_self_check(args.options);
    for (const std::string& line : report.lines) std::cout << line << "\n";
    return report.ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partition refinement for systems of composite transition types"};
    app.require_subcommand(1);

    MinimizeArgs min_args;
    CLI::App* minimize = app.add_subcommand("minimize", "Compute behavioural equivalence classes");
    minimize->add_option("file", min_args.input, "System file (text or JSON)")->required();
    minimize->add_option("--output", min_args.output, "What to print")
        ->check(CLI::IsMember({"partition", "coalgebra", "both"}));
    minimize->add_option("--format", min_args.format, "Input format; auto treats a leading '{' as JSON")
        ->check(CLI::IsMember({"auto", "text", "json"}));
    minimize->add_option("--initial", min_args.initial, "Initial partition file");
    minimize->add_flag("--oracle", min_args.oracle, "Cross-check against the brute-force minimizer");
    minimize->add_flag("--stats", min_args.stats, "Print counters to stderr");
    minimize->add_option("--check-invariants", min_args.checks, "Invariant checks after every step")
        ->check(CLI::IsMember({"none", "structural", "full"}));
    minimize->add_flag("--no-dedup", min_args.no_dedup, "Do not share equal intermediate values");

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate a random system");
    gen->add_option("--functor", gen_args.options.functor, "Functor term, e.g. \"P (A x X)\"")->required();
    gen->add_option("--states", gen_args.options.states, "Number of states")->required();
    gen->add_option("--edges", gen_args.options.edges, "Number of X occurrences")->required();
    gen->add_option("--seed", gen_args.options.seed, "RNG seed")->required();
    gen->add_option("--set-size", gen_args.options.set_size, "Elements per named set");
    gen->add_option("--max-weight", gen_args.options.max_weight, "Largest weight magnitude");
    gen->add_option("-o,--out", gen_args.output, "Output file (default stdout)");

    CheckArgs check_args;
    CLI::App* check = app.add_subcommand("check", "Run interface axiom and data structure self-checks");
    check->add_option("--interfaces", check_args.interfaces, "Interfaces to check")->delimiter(',')->expected(0, -1);
    check->add_option("--cases", check_args.options.axiom_cases, "Random cases per suite");
    check->add_option("--seed", check_args.options.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*minimize) return cmd_minimize(min_args);
        if (*gen) return cmd_gen(gen_args);
        return cmd_check(check_args);
    } catch (const partref::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const partref::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResource;
    } catch (const partref::OverflowError& e) {
        std::cerr << "overflow: " << e.what() << "\n";
        return kResource;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return kResource;
    } catch (const partref::InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return kMismatch;
    } catch (const partref::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }
}
