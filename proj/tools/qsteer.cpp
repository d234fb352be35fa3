// qsteer: amplitude-amplification front end.
//
// Subcommands:
//   grover         run a steered/subset search on the statevector simulator
//   pattern-match  run a database search from JSON db/query files
//   emit-qasm      write the OpenQASM 3 text of a search circuit
//   predict        closed-form iteration/probability table, no simulation
//
// Reports are JSON on stdout (or --out); the human summary goes to stderr so
// pipelines stay clean. All randomness flows from --seed (default 12345).
// Exit codes: 0 ok, 1 validation/parse error, 2 capacity error, 3 target
// unreachable from the trial state.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qsteer/amplify.hpp"
#include "qsteer/circuit.hpp"
#include "qsteer/patternmatch.hpp"
#include "qsteer/qasm.hpp"

using json = nlohmann::ordered_json;
using namespace qsteer;

namespace {

std::string iso_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&now));
    return buf;
}

std::string to_bits(std::size_t x, int n) {
    std::string s(n, '0');
    for (int q = 0; q < n; ++q)
        if (bit_at(x, q)) s[n - 1 - q] = '1';
    return s;
}

// --target accepts a decimal index, or a bit string when it is exactly n
// characters of 0/1 (so "11" with n=2 is the index-3 state, not index 11).
std::size_t parse_target(const std::string& tok, int n) {
    const bool binary_shaped =
        static_cast<int>(tok.size()) == n &&
        tok.find_first_not_of("01") == std::string::npos;
    std::size_t value = 0;
    if (binary_shaped) {
        for (char c : tok) value = value * 2 + (c - '0');
    } else {
        try {
            std::size_t used = 0;
            value = std::stoull(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw validation_error("target '" + tok + "' is neither an index nor a bit string");
        }
    }
    if (value >= dim_of(n))
        throw validation_error("target " + tok + " out of range: must be < 2^" +
                               std::to_string(n) + " = " + std::to_string(dim_of(n)));
    return value;
}

void write_report(const json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw validation_error("cannot open output file: " + out_path);
        f << report.dump(2) << "\n";
    }
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw validation_error("cannot open output file: " + path);
    f << text;
}

json trace_json(const std::vector<TraceEntry>& trace) {
    json arr = json::array();
    double worst = 0.0;
    for (const auto& e : trace) {
        const double diff = std::abs(e.measured - e.predicted);
        worst = std::max(worst, diff);
        arr.push_back({{"r", e.r},
                       {"predicted", e.predicted},
                       {"measured", e.measured},
                       {"diff", diff}});
    }
    return {{"entries", arr}, {"max_diff", worst}};
}

json histogram_json(const std::map<std::size_t, std::size_t>& hist) {
    json h = json::object();
    for (const auto& [x, c] : hist) h[std::to_string(x)] = c;
    return h;
}

// ---------------------------------------------------------------------------

struct GroverArgs {
    int n = 0;
    std::vector<std::string> targets;
    std::optional<int> iterations;
    std::uint64_t seed = 12345;
    std::size_t shots = 4096;
    std::string emit_path;
    std::string out_path;
};

CircuitIR grover_circuit_for(int n, std::size_t omega, int iterations) {
    GroverCircuitSpec spec;
    spec.n_qubits = n;
    spec.oracle_steering = SteeringBlock::selection_layer(to_bits(omega, n));
    spec.diffusion_steering = SteeringBlock::hadamard_layer(n);
    spec.iterations = iterations;
    return build_grover_circuit(spec);
}

int cmd_grover(const GroverArgs& a) {
    if (a.targets.empty()) throw validation_error("at least one --target is required");
    std::vector<std::size_t> indices;
    for (const auto& t : a.targets) indices.push_back(parse_target(t, a.n));

    const TargetSet target{ExplicitSubset(a.n, indices)};
    const StateVector trial = hadamard_state(a.n);
    const GroverPlan plan = make_plan(trial, target);
    const GroverResult run = grover_run(trial, target, a.iterations);

    const auto dist = probabilities(run.state);
    const auto hist = sample(dist, a.seed, a.shots);
    double marked_final = 0.0;
    for (std::size_t x : indices) marked_final += dist.probabilities[x];

    json targets = json::array();
    for (std::size_t x : indices)
        targets.push_back({{"index", x},
                           {"bits", to_bits(x, a.n)},
                           {"probability", dist.probabilities[x]}});

    json report{{"command", "grover"},
                {"n", a.n},
                {"targets", targets},
                {"theta", plan.geometry.theta},
                {"region", region_name(plan.region)},
                {"r_star", plan.r_star},
                {"iterations_run", run.iterations},
                {"predicted_final", success_probability(run.iterations, plan.geometry.theta)},
                {"measured_final", marked_final},
                {"trace", trace_json(run.trace)},
                {"seed", a.seed},
                {"shots", a.shots},
                {"histogram", histogram_json(hist)},
                {"timestamp", iso_timestamp()}};

    if (!a.emit_path.empty()) {
        if (indices.size() != 1)
            throw validation_error("--emit needs a single basis-state target");
        write_text(emit_qasm(grover_circuit_for(a.n, indices[0], run.iterations)), a.emit_path);
        report["qasm_path"] = a.emit_path;
    }

    write_report(report, a.out_path);
    std::cerr << "grover: n=" << a.n << " theta=" << plan.geometry.theta
              << " region=" << region_name(plan.region) << " r*=" << plan.r_star
              << " ran " << run.iterations << " iterations, P(marked)=" << marked_final << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

std::vector<cplx> parse_amplitudes(const json& arr, const std::string& what) {
    if (!arr.is_array()) throw validation_error(what + ": expected an array of [re, im] pairs");
    std::vector<cplx> v;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& p = arr[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw validation_error(what + ": element " + std::to_string(i) +
                                   " is not a [re, im] pair");
        v.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return v;
}

json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw validation_error("cannot open file: " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw validation_error(path + ": " + e.what());
    }
}

// db file: {"r": <index qubits, optional>, "m": <data qubits>,
//           "entries": [[[re, im], ...], ...]}
QuantumDatabase load_database(const std::string& path) {
    const json doc = load_json_file(path);
    if (!doc.contains("m") || !doc["m"].is_number_integer())
        throw validation_error(path + ": missing integer field 'm'");
    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw validation_error(path + ": missing array field 'entries'");
    const int m = doc["m"].get<int>();
    std::vector<std::vector<cplx>> cols;
    for (std::size_t k = 0; k < doc["entries"].size(); ++k)
        cols.push_back(parse_amplitudes(doc["entries"][k], path + ": entry " + std::to_string(k)));
    QuantumDatabase db = make_database(m, std::move(cols));
    if (doc.contains("r") && doc["r"].get<int>() != db.r)
        throw validation_error(path + ": field 'r' says " + doc["r"].dump() +
                               " index qubits but the entry count needs " + std::to_string(db.r));
    return db;
}

// query file: {"m": <data qubits>, "b": [[re, im], ...]}
Query load_query(const std::string& path) {
    const json doc = load_json_file(path);
    if (!doc.contains("m") || !doc["m"].is_number_integer())
        throw validation_error(path + ": missing integer field 'm'");
    if (!doc.contains("b"))
        throw validation_error(path + ": missing array field 'b'");
    return make_query(doc["m"].get<int>(), parse_amplitudes(doc["b"], path + ": b"));
}

struct MatchArgs {
    std::string db_path;
    std::string query_path;
    std::string variant = "g";
    std::optional<int> iterations;
    std::uint64_t seed = 12345;
    std::size_t shots = 4096;
    std::string out_path;
};

int cmd_pattern_match(const MatchArgs& a) {
    const QuantumDatabase db = load_database(a.db_path);
    const Query q = load_query(a.query_path);
    const SearchVariant variant =
        (a.variant == "ab") ? SearchVariant::ABForm : SearchVariant::GForm;

    const MatchResult res = search(db, q, variant, a.seed, a.shots, a.iterations);
    const ClassicalMatch classical = classical_argmax(db, q);

    json hist = json::array();
    for (std::size_t c : res.histogram) hist.push_back(c);
    json index_dist = json::array();
    for (double p : res.index_distribution) index_dist.push_back(p);
    json conditional = json::array();
    for (double p : res.conditional_distribution) conditional.push_back(p);
    json overlaps = json::array();
    for (double v : classical.overlaps) overlaps.push_back(v);

    json report{{"command", "pattern-match"},
                {"variant", a.variant == "ab" ? "ab" : "g"},
                {"r", db.r},
                {"m", db.m},
                {"entries", db.valid_entries},
                {"k_star", res.k_star},
                {"classical_k_star", classical.k_star},
                {"agrees_with_classical", res.k_star == classical.k_star},
                {"theta", res.theta},
                {"marked_probability", res.marked_probability},
                {"conditional_confidence", res.conditional_confidence},
                {"quantum_oracle_calls", res.oracle_calls},
                {"classical_calls", db.valid_entries},
                {"trace", trace_json(res.trace)},
                {"seed", a.seed},
                {"shots", a.shots},
                {"histogram", hist},
                {"index_distribution", index_dist},
                {"conditional_distribution", conditional},
                {"classical_overlaps", overlaps},
                {"timestamp", iso_timestamp()}};
    write_report(report, a.out_path);
    std::cerr << "pattern-match: k*=" << res.k_star << " (classical " << classical.k_star
              << "), " << res.oracle_calls << " quantum calls vs " << db.valid_entries
              << " classical, P(marked)=" << res.marked_probability << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct EmitArgs {
    int n = 0;
    std::vector<std::string> targets;
    std::optional<int> iterations;
    std::string out_path;
};

int cmd_emit_qasm(const EmitArgs& a) {
    if (a.targets.size() != 1)
        throw validation_error("emit-qasm needs exactly one --target");
    const std::size_t omega = parse_target(a.targets[0], a.n);
    const TargetSet target{ExplicitSubset(a.n, {omega})};
    const GroverPlan plan = make_plan(hadamard_state(a.n), target);
    const int iters = a.iterations.value_or(plan.r_star);
    if (iters < 0) throw validation_error("--iterations must be >= 0");
    const std::string text = emit_qasm(grover_circuit_for(a.n, omega, iters));
    if (a.out_path.empty()) std::cout << text;
    else write_text(text, a.out_path);
    std::cerr << "emit-qasm: n=" << a.n << " target=" << omega << " iterations=" << iters << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct PredictArgs {
    int n = 0;
    std::size_t marked = 1;
    double theta = 0.0;
    std::string out_path;
};

int cmd_predict(const PredictArgs& a) {
    double theta = a.theta;
    json report{{"command", "predict"}};
    if (theta > 0.0) {
        report["theta"] = theta;
    } else {
        if (a.n < 1) throw validation_error("predict needs --theta or --n");
        const double big_n = static_cast<double>(dim_of(a.n));
        if (a.marked < 1 || static_cast<double>(a.marked) > big_n)
            throw validation_error("--m must lie in [1, 2^n]");
        const double ratio = static_cast<double>(a.marked) / big_n;
        theta = std::asin(std::sqrt(ratio));
        report["n"] = a.n;
        report["marked"] = a.marked;
        report["theta"] = theta;
        report["region"] = region_name(classify_region(ratio));
    }
    const int r_star = optimal_iterations(theta);
    report["r_star"] = r_star;
    json table = json::array();
    double best_p = 0.0;
    int best_r = r_star;
    for (int r : {r_star - 1, r_star, r_star + 1}) {
        if (r < 0) continue;
        const double p = success_probability(r, theta);
        table.push_back({{"r", r}, {"success_probability", p}});
        if (p > best_p) { best_p = p; best_r = r; }
    }
    report["table"] = table;
    report["best_r"] = best_r;
    report["best_probability"] = best_p;
    report["timestamp"] = iso_timestamp();
    write_report(report, a.out_path);
    std::cerr << "predict: theta=" << theta << " r*=" << r_star
              << " P(r*)=" << success_probability(r_star, theta) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"statevector amplitude-amplification toolkit"};
    app.require_subcommand(1);

    GroverArgs ga;
    int ga_iters = -1;
    auto* grover = app.add_subcommand("grover", "run a subset search with a Hadamard trial");
    grover->add_option("--n", ga.n, "register size in qubits")->required();
    grover->add_option("--target", ga.targets,
                       "marked state: decimal index, or an n-char bit string (repeatable)");
    grover->add_option("--iterations", ga_iters, "override the iteration count");
    grover->add_option("--seed", ga.seed, "sampling seed");
    grover->add_option("--shots", ga.shots, "number of samples");
    grover->add_option("--emit", ga.emit_path, "also write the circuit as OpenQASM 3");
    grover->add_option("--out", ga.out_path, "write the JSON report here instead of stdout");

    MatchArgs ma;
    int ma_iters = -1;
    auto* match = app.add_subcommand("pattern-match", "search a database file for a query");
    match->add_option("--db", ma.db_path, "database JSON file")->required();
    match->add_option("--query", ma.query_path, "query JSON file")->required();
    match->add_option("--variant", ma.variant, "search layout: g or ab")
        ->check(CLI::IsMember({"g", "ab"}));
    match->add_option("--iterations", ma_iters, "override the iteration count");
    match->add_option("--seed", ma.seed, "sampling seed");
    match->add_option("--shots", ma.shots, "number of samples");
    match->add_option("--out", ma.out_path, "write the JSON report here instead of stdout");

    EmitArgs ea;
    int ea_iters = -1;
    auto* emit = app.add_subcommand("emit-qasm", "write a search circuit as OpenQASM 3");
    emit->add_option("--n", ea.n, "register size in qubits")->required();
    emit->add_option("--target", ea.targets, "marked state (exactly one)");
    emit->add_option("--iterations", ea_iters, "override the iteration count");
    emit->add_option("--out", ea.out_path, "write the text here instead of stdout");

    PredictArgs pa;
    auto* predict = app.add_subcommand("predict", "closed-form iteration table, no simulation");
    predict->add_option("--n", pa.n, "register size in qubits");
    predict->add_option("--m", pa.marked, "number of marked states (default 1)");
    predict->add_option("--theta", pa.theta, "plane angle, overrides --n/--m");
    predict->add_option("--out", pa.out_path, "write the JSON report here instead of stdout");

    try {
        app.parse(argc, argv);
        if (*grover) {
            if (grover->count("--iterations")) ga.iterations = ga_iters;
            return cmd_grover(ga);
        }
        if (*match) {
            if (match->count("--iterations")) ma.iterations = ma_iters;
            return cmd_pattern_match(ma);
        }
        if (*emit) {
            if (emit->count("--iterations")) ea.iterations = ea_iters;
            return cmd_emit_qasm(ea);
        }
        return cmd_predict(pa);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const unreachable_target_error& e) {
        std::cerr << "unreachable target: " << e.what() << "\n";
        return 3;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
