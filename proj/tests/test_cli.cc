#include <catch2/catch.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>

#include "fixtures.hh"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args) {
    const std::string command = std::string(PARTREF_CLI) + " " + args + " 2>/dev/null";
    Run run;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe);
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) run.out.append(buffer, got);
    const int status = pclose(pipe);
    run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return run;
}

std::string data(const std::string& name) { return "'" + fixtures::data_path(name) + "'"; }

std::string temp_file(const std::string& name, const std::string& content) {
    const std::string path = std::string(PARTREF_TEST_TMP) + "/" + name;
    std::ofstream(path, std::ios::binary) << content;
    return path;
}

}  // namespace

TEST_CASE("minimize prints one block per line") {
    const Run a = cli("minimize " + data("five_states.txt"));
    CHECK(a.code == 0);
    CHECK(a.out == "x0 x1\nx2\nx3 x4\n");
    const Run b = cli("minimize --oracle " + data("five_weighted.txt"));
    CHECK(b.code == 0);
    CHECK(b.out == "x0\nx1\nx2 x3 x4\n");
}

TEST_CASE("errors map to exit codes") {
    const Run bad = cli("minimize " + data("malformed.txt"));
    CHECK(bad.code == 2);
    CHECK(bad.out.empty());
    CHECK(cli("minimize /nonexistent/file.txt").code == 4);
    CHECK(cli("minimize").code == 1);
    CHECK(cli("minimize --output=graph " + data("five_states.txt")).code == 1);
    CHECK(cli("gen --functor 'D X' --states 10 --edges 3 --seed 1").code == 1);
}

TEST_CASE("minimized systems are already minimal") {
    const Run first = cli("minimize --output=coalgebra " + data("nested.txt"));
    REQUIRE(first.code == 0);
    const Run again = cli("minimize " + temp_file("nested_min.txt", first.out));
    REQUIRE(again.code == 0);
    std::size_t lines = 0;
    for (char c : again.out) lines += c == '\n';
    CHECK(again.out.find(' ') == std::string::npos);
    CHECK(lines == 6);
}

TEST_CASE("gen is reproducible") {
    const std::string args = "gen --functor 'P (A x X)' --states 50 --edges 200 --seed 3";
    const Run one = cli(args);
    const Run two = cli(args);
    CHECK(one.code == 0);
    CHECK(one.out == two.out);
    CHECK(cli("minimize --oracle " + temp_file("gen.txt", one.out)).code == 0);
}

TEST_CASE("check") {
    CHECK(cli("check --cases 500").code == 0);
    CHECK(cli("check --cases 500 --interfaces broken-powerset").code == 3);
    CHECK(cli("check --interfaces").code == 1);
    CHECK(cli("check --interfaces nonsense").code == 1);
}
