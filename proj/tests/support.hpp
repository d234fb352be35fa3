#pragma once

// Shared test helpers: deterministic random states/unitaries and dense
// reference application, independent of the structured library paths.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qsteer/matrix.hpp"
#include "qsteer/qstate.hpp"

namespace qtest {

using qsteer::cplx;
using qsteer::Matrix;
using qsteer::StateVector;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline StateVector random_state(int n, std::mt19937_64& gen) {
    StateVector s(n);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (auto& a : s.amps) a = cplx{dist(gen), dist(gen)};
    s.renormalize();
    return s;
}

inline std::vector<cplx> random_unit_vector(std::size_t dim, std::mt19937_64& gen) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<cplx> v(dim);
    double nrm2 = 0.0;
    for (auto& x : v) {
        x = cplx{dist(gen), dist(gen)};
        nrm2 += std::norm(x);
    }
    const double inv = 1.0 / std::sqrt(nrm2);
    for (auto& x : v) x *= inv;
    return v;
}

// Haar-ish random unitary via Gram-Schmidt on a random complex matrix.
inline Matrix random_unitary(std::size_t dim, std::mt19937_64& gen) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<std::vector<cplx>> cols;
    while (cols.size() < dim) {
        std::vector<cplx> v(dim);
        for (auto& x : v) x = cplx{dist(gen), dist(gen)};
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& c : cols) {
                cplx ov{};
                for (std::size_t i = 0; i < dim; ++i) ov += std::conj(c[i]) * v[i];
                for (std::size_t i = 0; i < dim; ++i) v[i] -= ov * c[i];
            }
        double nrm2 = 0.0;
        for (const auto& x : v) nrm2 += std::norm(x);
        if (nrm2 < 1e-12) continue;
        const double inv = 1.0 / std::sqrt(nrm2);
        for (auto& x : v) x *= inv;
        cols.push_back(std::move(v));
    }
    Matrix u(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) u(i, j) = cols[j][i];
    return u;
}

// Reference dense matrix-vector application (the independent oracle for
// structured gate/reflection paths).
inline StateVector dense_apply(const Matrix& u, const StateVector& s) {
    StateVector out(s.n_qubits);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        cplx acc{};
        for (std::size_t j = 0; j < s.dim(); ++j) acc += u(i, j) * s[j];
        out[i] = acc;
    }
    return out;
}

inline double max_diff(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline double fidelity(const StateVector& a, const StateVector& b) {
    return std::abs(qsteer::inner_product(a, b));
}

} // namespace qtest
