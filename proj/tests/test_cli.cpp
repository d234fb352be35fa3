#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// Black-box tests of the command-line binary (path injected by the build as
// QSTEER_CLI_PATH). Output reports are parsed back as JSON.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#ifndef _WIN32
#include <sys/wait.h>
#endif
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef QSTEER_CLI_PATH
#error "QSTEER_CLI_PATH must be defined by the build"
#endif

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int counter = 0;

RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_stdout_" + std::to_string(counter++) + ".tmp";
    const std::string cmd =
        std::string(QSTEER_CLI_PATH) + " " + args + " > " + out_path + " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
#ifdef _WIN32
    r.exit_code = status;
#else
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
    r.out = slurp(out_path);
    std::remove(out_path.c_str());
    return r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

json strip_timestamp(json j) {
    j.erase("timestamp");
    return j;
}

} // namespace

TEST_CASE("grover: exact two-qubit case") {
    const RunResult r = run_cli("grover --n 2 --target 3 --seed 7 --shots 100");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["r_star"] == 1);
    CHECK(rep["iterations_run"] == 1);
    CHECK(rep["measured_final"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep["histogram"]["3"] == 100);
    CHECK(rep["region"] == "standard");
    CHECK(rep["trace"]["max_diff"].get<double>() < 1e-9);
}

TEST_CASE("grover: bit-string targets and subset geometry") {
    // n=4, targets {5, 9}: theta = arcsin(sqrt(2/16))
    const RunResult r = run_cli("grover --n 4 --target 0101 --target 9 --seed 1 --shots 50");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["theta"].get<double>() ==
          doctest::Approx(std::asin(std::sqrt(2.0 / 16.0))).epsilon(1e-12));
    CHECK(rep["r_star"] == 2);
    CHECK(rep["targets"].size() == 2);
    CHECK(rep["targets"][0]["index"] == 5);
}

TEST_CASE("grover: deterministic reports modulo timestamp") {
    const std::string args = "grover --n 3 --target 6 --seed 99 --shots 500";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(strip_timestamp(json::parse(a.out)) == strip_timestamp(json::parse(b.out)));
}

TEST_CASE("grover: validation and capacity exit codes") {
    CHECK(run_cli("grover --n 2 --target 7").exit_code == 1);  // index >= 2^n
    CHECK(run_cli("grover --n 2").exit_code == 1);             // no target
    CHECK(run_cli("grover --n 40 --target 0").exit_code == 2); // beyond qubit cap
}

TEST_CASE("grover: --emit writes parseable OpenQASM") {
    const RunResult r =
        run_cli("grover --n 2 --target 3 --shots 10 --emit cli_emit.qasm");
    REQUIRE(r.exit_code == 0);
    const std::string text = slurp("cli_emit.qasm");
    std::remove("cli_emit.qasm");
    CHECK(text.rfind("OPENQASM 3.0;", 0) == 0);
    CHECK(text.find("ctrl @ z") != std::string::npos);
}

TEST_CASE("emit-qasm subcommand writes to stdout") {
    const RunResult r = run_cli("emit-qasm --n 3 --target 5");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("OPENQASM 3.0;\nqubit[3] q;\n", 0) == 0);
    CHECK(r.out.find("ctrl(2) @ z") != std::string::npos);
}

TEST_CASE("predict: closed-form table") {
    // N=16, M=4: theta = pi/6, r* = 1, P(r*) = 1
    const RunResult r = run_cli("predict --n 4 --m 4");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["r_star"] == 1);
    CHECK(rep["best_probability"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep["region"] == "standard");

    // M = N: nothing to do
    const json trivial = json::parse(run_cli("predict --n 3 --m 8").out);
    CHECK(trivial["r_star"] == 0);

    // theta for N=10000, M=1 reproduces the ~100-call regime: r* = 78
    const json big = json::parse(run_cli("predict --theta 0.01000016667416711").out);
    CHECK(big["r_star"] == 78);

    CHECK(run_cli("predict --theta 0").exit_code == 1);
}

TEST_CASE("pattern-match: end-to-end with JSON files") {
    // four orthonormal entries (identity columns), query equals entry 2;
    // theta = pi/6 here, so one iteration lands exactly on the answer
    write_file("cli_db.json", R"({
        "r": 2, "m": 2,
        "entries": [[[1,0],[0,0],[0,0],[0,0]],
                    [[0,0],[1,0],[0,0],[0,0]],
                    [[0,0],[0,0],[1,0],[0,0]],
                    [[0,0],[0,0],[0,0],[1,0]]]
    })");
    write_file("cli_query.json", R"({"m": 2, "b": [[0,0],[0,0],[1,0],[0,0]]})");

    const RunResult r =
        run_cli("pattern-match --db cli_db.json --query cli_query.json --shots 200 --seed 3");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["k_star"] == 2);
    CHECK(rep["classical_k_star"] == 2);
    CHECK(rep["agrees_with_classical"] == true);
    CHECK(rep["classical_calls"] == 4);
    CHECK(rep["quantum_oracle_calls"] == 1);
    CHECK(rep["marked_probability"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep["trace"]["max_diff"].get<double>() < 1e-9);

    // both layouts agree on the winner
    const json ab = json::parse(
        run_cli("pattern-match --db cli_db.json --query cli_query.json --variant ab "
                "--shots 200 --seed 3")
            .out);
    CHECK(ab["k_star"] == 2);
    CHECK(ab["index_distribution"] == rep["index_distribution"]);

    std::remove("cli_db.json");
    std::remove("cli_query.json");
}

TEST_CASE("pattern-match: unreachable query exits 3") {
    write_file("cli_db0.json", R"({"m": 1, "entries": [[[1.0, 0.0], [0.0, 0.0]]]})");
    write_file("cli_query0.json", R"({"m": 1, "b": [[0.0, 0.0], [1.0, 0.0]]})");
    CHECK(run_cli("pattern-match --db cli_db0.json --query cli_query0.json").exit_code == 3);
    std::remove("cli_db0.json");
    std::remove("cli_query0.json");
}

TEST_CASE("pattern-match: malformed files exit 1 with entry index in message") {
    write_file("cli_bad.json", R"({"m": 1, "entries": [[[1.0, 0.0], [0.0]]]})");
    write_file("cli_q.json", R"({"m": 1, "b": [[1.0, 0.0], [0.0, 0.0]]})");
    CHECK(run_cli("pattern-match --db cli_bad.json --query cli_q.json").exit_code == 1);
    CHECK(run_cli("pattern-match --db missing.json --query cli_q.json").exit_code == 1);

    // inconsistent r field
    write_file("cli_bad_r.json",
               R"({"r": 3, "m": 1, "entries": [[[1.0, 0.0], [0.0, 0.0]]]})");
    CHECK(run_cli("pattern-match --db cli_bad_r.json --query cli_q.json").exit_code == 1);
    std::remove("cli_bad.json");
    std::remove("cli_bad_r.json");
    std::remove("cli_q.json");
}

TEST_CASE("--out writes the report to a file") {
    const RunResult r = run_cli("grover --n 2 --target 3 --shots 10 --out cli_report.json");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.empty());
    const json rep = json::parse(slurp("cli_report.json"));
    std::remove("cli_report.json");
    CHECK(rep["command"] == "grover");
}
