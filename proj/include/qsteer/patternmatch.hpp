#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "qsteer/amplify.hpp"
#include "qsteer/matrix.hpp"
#include "qsteer/oracles.hpp"
#include "qsteer/qstate.hpp"

namespace qsteer {

/// Column-normalized complex database. Entry k is an M = 2^m dimensional
/// unit vector; the index register spans the high-order r qubits and the
/// data register the low-order m qubits, so the flat basis index of
/// (k, j) is k*M + j.
struct QuantumDatabase {
    int r = 0; // index qubits; R = 2^r entries after padding
    int m = 0; // data qubits; M = 2^m
    std::vector<std::vector<cplx>> entries;
    std::size_t valid_entries = 0; // entries before power-of-two padding

    std::size_t entry_count() const { return entries.size(); }
    std::size_t entry_dim() const { return dim_of(m); }
    int n_qubits() const { return r + m; }
};

struct Query {
    int m = 0;
    std::vector<cplx> b;
};

namespace detail {

inline void check_unit_vector(const std::vector<cplx>& v, const char* what) {
    double nrm2 = 0.0;
    for (const auto& x : v) nrm2 += std::norm(x);
    if (std::abs(std::sqrt(nrm2) - 1.0) > 1e-6)
        throw validation_error(std::string(what) + ": vector is not unit-norm");
}

inline void normalize_in_place(std::vector<cplx>& v) {
    double nrm2 = 0.0;
    for (const auto& x : v) nrm2 += std::norm(x);
    const double inv = 1.0 / std::sqrt(nrm2);
    for (auto& x : v) x *= inv;
}

// Deterministic unit vector orthogonal to q, used as a padding entry so
// dummy indices carry zero overlap with the query.
inline std::vector<cplx> orthogonal_unit(const std::vector<cplx>& q) {
    std::size_t pivot = 0;
    double best = std::norm(q[0]);
    for (std::size_t i = 1; i < q.size(); ++i)
        if (std::norm(q[i]) < best) { best = std::norm(q[i]); pivot = i; }
    std::vector<cplx> v(q.size());
    v[pivot] = 1.0;
    cplx ov{};
    for (std::size_t i = 0; i < q.size(); ++i) ov += std::conj(q[i]) * v[i];
    for (std::size_t i = 0; i < q.size(); ++i) v[i] -= ov * q[i];
    normalize_in_place(v);
    return v;
}

} // namespace detail

/// Builds a database from raw columns, normalizing those within 1e-6 of
/// unit norm and rejecting the rest. A non-power-of-two entry count is
/// padded to the next power of two; padding entries are deferred to search
/// time, where they can be chosen orthogonal to the query.
inline QuantumDatabase make_database(int m, std::vector<std::vector<cplx>> columns) {
    if (m < 1) throw capacity_error("data register needs at least one qubit");
    if (columns.empty()) throw validation_error("database has no entries");
    QuantumDatabase db;
    db.m = m;
    db.valid_entries = columns.size();
    for (auto& c : columns) {
        if (c.size() != dim_of(m))
            throw validation_error("database entry dimension does not match 2^m");
        detail::check_unit_vector(c, "database entry");
        detail::normalize_in_place(c);
    }
    std::size_t cap = 1;
    int r = 0;
    while (cap < columns.size()) { cap <<= 1; ++r; }
    db.r = r;
    db.entries = std::move(columns);
    check_qubit_count(db.r + db.m);
    return db;
}

inline Query make_query(int m, std::vector<cplx> b) {
    if (b.size() != dim_of(m)) throw validation_error("query dimension does not match 2^m");
    double nrm2 = 0.0;
    for (const auto& x : b) nrm2 += std::norm(x);
    if (nrm2 == 0.0) throw validation_error("query vector is zero");
    detail::check_unit_vector(b, "query");
    detail::normalize_in_place(b);
    return Query{m, std::move(b)};
}

namespace detail {

// Fills the padding slots with unit vectors orthogonal to the query.
inline std::vector<std::vector<cplx>> padded_entries(const QuantumDatabase& db,
                                                     const Query& q) {
    std::vector<std::vector<cplx>> cols = db.entries;
    const std::size_t cap = dim_of(db.r);
    if (cols.size() < cap) {
        const auto dummy = orthogonal_unit(q.b);
        cols.resize(cap, dummy);
    }
    return cols;
}

inline StateVector database_state(const std::vector<std::vector<cplx>>& cols, int r, int m) {
    StateVector s(r + m);
    const std::size_t big_m = dim_of(m);
    const double inv_sqrt_r = 1.0 / std::sqrt(static_cast<double>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k)
        for (std::size_t j = 0; j < big_m; ++j)
            s[k * big_m + j] = cols[k][j] * inv_sqrt_r;
    return s;
}

} // namespace detail

/// A_n with first column the database state (1/sqrt(R)) sum_k |k> (x) |data(k)>,
/// completed deterministically to a unitary.
inline Matrix build_database_operator(const QuantumDatabase& db) {
    // materializing 2^n x 2^n; keep this to small registers
    if (db.n_qubits() > 12)
        throw capacity_error("database operator materialization capped at 12 qubits");
    std::vector<cplx> e0(dim_of(db.m));
    e0[0] = 1.0;
    const auto cols = detail::padded_entries(db, Query{db.m, std::move(e0)});
    return complete_unitary(detail::database_state(cols, db.r, db.m).amps);
}

/// B_m with first column the query state sum_j b_j |j>.
inline Matrix build_query_operator(const Query& q) {
    return complete_unitary(q.b);
}

/// Per-k amplitude of the trial state (1_r (x) B†) A |0^n> on |k> (x) |0^m>,
/// which equals (1/sqrt(R)) b† a_k. This is the bridge between the classical
/// overlap problem and the zero-state oracle.
inline std::vector<cplx> trial_overlap_identity(const QuantumDatabase& db, const Query& q) {
    if (db.m != q.m) throw validation_error("query and database dimension mismatch");
    const auto cols = detail::padded_entries(db, q);
    const double inv_sqrt_r = 1.0 / std::sqrt(static_cast<double>(cols.size()));
    std::vector<cplx> out(cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) {
        cplx acc{};
        for (std::size_t j = 0; j < cols[k].size(); ++j)
            acc += std::conj(q.b[j]) * cols[k][j];
        out[k] = acc * inv_sqrt_r;
    }
    return out;
}

enum class SearchVariant { GForm, ABForm };

struct MatchResult {
    std::size_t k_star = 0;
    std::vector<std::size_t> histogram;          // sampled index-register counts
    std::vector<double> index_distribution;      // unconditional P(k)
    std::vector<double> conditional_distribution; // P(k | marked)
    double conditional_confidence = 0.0;         // conditional_distribution[k_star]
    double marked_probability = 0.0;
    double theta = 0.0;
    int oracle_calls = 0;
    std::vector<TraceEntry> trace;
};

struct ClassicalMatch {
    std::size_t k_star = 0;
    std::vector<double> overlaps; // |b† a_k| per entry (valid entries only)
};

/// Exhaustive |b† a_k| scan; ties broken by lowest index. The verification
/// oracle for search().
inline ClassicalMatch classical_argmax(const QuantumDatabase& db, const Query& q) {
    if (db.m != q.m) throw validation_error("query and database dimension mismatch");
    ClassicalMatch res;
    res.overlaps.resize(db.valid_entries);
    for (std::size_t k = 0; k < db.valid_entries; ++k) {
        cplx acc{};
        for (std::size_t j = 0; j < db.entries[k].size(); ++j)
            acc += std::conj(q.b[j]) * db.entries[k][j];
        res.overlaps[k] = std::abs(acc);
        if (res.overlaps[k] > res.overlaps[res.k_star]) res.k_star = k;
    }
    return res;
}

/// Amplified database search. The G-form steers the
/// trial by G = (1_r (x) B†) A and marks the data-register zero state; the
/// AB-form steers the trial by A alone and marks the query direction via a
/// B-steered subsystem oracle. The two differ by the basis change 1_r (x) B
/// and produce identical index-register distributions.
inline MatchResult search(const QuantumDatabase& db, const Query& q, SearchVariant variant,
                          std::uint64_t seed, std::size_t shots,
                          std::optional<int> iterations = std::nullopt) {
    if (db.m != q.m) throw validation_error("query and database dimension mismatch");
    const auto cols = detail::padded_entries(db, q);
    const std::size_t big_m = dim_of(db.m);
    const int n = db.n_qubits();

    StateVector trial = detail::database_state(cols, db.r, db.m);
    std::optional<TargetSet> target;
    const Matrix b_op = build_query_operator(q);

    if (variant == SearchVariant::GForm) {
        // trial = (1_r (x) B†) A |0^n>, oracle marks |0^m> in the data register
        const Matrix b_dag = b_op.adjoint();
        for (std::size_t off = 0; off < trial.dim(); off += big_m) {
            std::vector<cplx> block(trial.amps.begin() + off,
                                    trial.amps.begin() + off + big_m);
            block = b_dag * block;
            std::copy(block.begin(), block.end(), trial.amps.begin() + off);
        }
        std::vector<std::size_t> zeros;
        for (std::size_t k = 0; k < cols.size(); ++k) zeros.push_back(k * big_m);
        target = TargetSet{ExplicitSubset(n, std::move(zeros))};
    } else {
        target = TargetSet{SubsystemZero(db.m, b_op)};
    }

    GroverResult run = grover_run(trial, *target, iterations, true);

    MatchResult res;
    res.theta = std::asin(std::min(1.0, std::sqrt(run.trace.front().measured)));
    res.oracle_calls = run.iterations;
    res.trace = std::move(run.trace);

    const MeasurementDistribution joint = probabilities(run.state);
    res.index_distribution = marginal_high(joint, db.m).probabilities;

    // conditional weight of each index inside the marked subspace
    const StateVector marked = marked_component(run.state, *target);
    res.marked_probability = marked.norm_squared();
    res.conditional_distribution.assign(cols.size(), 0.0);
    for (std::size_t k = 0; k < cols.size(); ++k)
        for (std::size_t j = 0; j < big_m; ++j)
            res.conditional_distribution[k] += std::norm(marked[k * big_m + j]);
    double total = 0.0;
    for (double p : res.conditional_distribution) total += p;
    if (total > 0.0)
        for (double& p : res.conditional_distribution) p /= total;

    // sample the index register; dummy padding indices are excluded from
    // the winner but kept in the histogram for transparency
    MeasurementDistribution index_dist{res.index_distribution};
    const auto hist = sample(index_dist, seed, shots);
    res.histogram.assign(cols.size(), 0);
    for (const auto& [k, c] : hist) res.histogram[k] = c;
    std::size_t best = 0;
    for (std::size_t k = 1; k < db.valid_entries; ++k)
        if (res.histogram[k] > res.histogram[best]) best = k;
    res.k_star = best;
    res.conditional_confidence = res.conditional_distribution[best];
    return res;
}

} // namespace qsteer
