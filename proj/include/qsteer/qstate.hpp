#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "qsteer/common.hpp"

namespace qsteer {

/// Dense n-qubit statevector. Basis index x is the base-10 reading of the
/// bit string x_{n-1}...x_1 x_0 with x_0 the 2^0 bit (OpenQASM little-endian
/// ordering; the only ordering used anywhere in the core).
struct StateVector {
    int n_qubits = 0;
    std::vector<cplx> amps;

    StateVector() = default;
    explicit StateVector(int n) : n_qubits((check_qubit_count(n), n)), amps(dim_of(n)) {}

    std::size_t dim() const { return amps.size(); }
    cplx& operator[](std::size_t x) { return amps[x]; }
    const cplx& operator[](std::size_t x) const { return amps[x]; }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amps) s += std::norm(a);
        return s;
    }
    double norm() const { return std::sqrt(norm_squared()); }

    // Never called implicitly; normalization drift is a bug to surface,
    // not repair.
    void renormalize() {
        const double nrm = norm();
        if (nrm == 0.0) throw validation_error("cannot renormalize a zero state");
        const double inv = 1.0 / nrm;
        for (auto& a : amps) a *= inv;
    }
};

inline StateVector zero_state(int n) {
    StateVector s(n);
    s[0] = 1.0;
    return s;
}

inline StateVector hadamard_state(int n) {
    StateVector s(n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(s.dim()));
    for (auto& a : s.amps) a = amp;
    return s;
}

inline StateVector basis_state(int n, std::size_t x) {
    StateVector s(n);
    if (x >= s.dim()) throw validation_error("basis index out of range");
    s[x] = 1.0;
    return s;
}

inline cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.n_qubits != b.n_qubits)
        throw validation_error("inner_product: dimension mismatch");
    cplx s{};
    for (std::size_t x = 0; x < a.dim(); ++x) s += std::conj(a[x]) * b[x];
    return s;
}

struct MeasurementDistribution {
    std::vector<double> probabilities;
};

inline MeasurementDistribution probabilities(const StateVector& s) {
    MeasurementDistribution d;
    d.probabilities.resize(s.dim());
    for (std::size_t x = 0; x < s.dim(); ++x) d.probabilities[x] = std::norm(s[x]);
    return d;
}

/// Marginal over the low-order `k` qubits (outcome = x mod 2^k).
inline MeasurementDistribution marginal_low(const MeasurementDistribution& d, int k) {
    MeasurementDistribution out;
    out.probabilities.assign(dim_of(k), 0.0);
    const std::size_t mask = dim_of(k) - 1;
    for (std::size_t x = 0; x < d.probabilities.size(); ++x)
        out.probabilities[x & mask] += d.probabilities[x];
    return out;
}

/// Marginal over the high-order qubits above the low `k` (outcome = x div 2^k).
inline MeasurementDistribution marginal_high(const MeasurementDistribution& d, int k) {
    MeasurementDistribution out;
    out.probabilities.assign(d.probabilities.size() >> k, 0.0);
    for (std::size_t x = 0; x < d.probabilities.size(); ++x)
        out.probabilities[x >> k] += d.probabilities[x];
    return out;
}

namespace detail {
// splitmix64 over a counter. std::mt19937_64 is standardized bit-for-bit,
// but the <random> distribution adapters are not, so the uniform draw is
// rolled by hand to keep sampling seed-stable across platforms.
struct SeededUniform {
    std::uint64_t state;
    explicit SeededUniform(std::uint64_t seed) : state(seed) {}
    double next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
};
} // namespace detail

/// Seeded sampling by inverse-CDF lookup. Deterministic across runs and
/// platforms for a fixed (seed, distribution, shots) triple.
inline std::map<std::size_t, std::size_t>
sample(const MeasurementDistribution& d, std::uint64_t seed, std::size_t shots) {
    if (shots < 1) throw validation_error("sample: shots must be >= 1");
    std::vector<double> cdf(d.probabilities.size());
    double acc = 0.0;
    for (std::size_t x = 0; x < cdf.size(); ++x) {
        acc += d.probabilities[x];
        cdf[x] = acc;
    }
    detail::SeededUniform rng(seed);
    std::map<std::size_t, std::size_t> hist;
    for (std::size_t i = 0; i < shots; ++i) {
        const double u = rng.next() * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const std::size_t x = (it == cdf.end()) ? cdf.size() - 1
                                                : static_cast<std::size_t>(it - cdf.begin());
        ++hist[x];
    }
    return hist;
}

} // namespace qsteer
