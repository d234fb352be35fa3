#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsteer {

using cplx = std::complex<double>;

// Central tolerance constants. Norms and probability sums are checked at
// kNormTol; exact algebraic identities on small systems at kAlgebraTol.
inline constexpr double kNormTol = 1e-10;
inline constexpr double kAlgebraTol = 1e-12;

// Hard cap on statevector size (2^24 amplitudes = 256 MiB of doubles).
inline constexpr int kMaxQubits = 24;

// Kernel oracles keep M selected transformation rows of length 2^n each;
// above this the memory cost is no longer desk-scale.
inline constexpr int kMaxKernelQubits = 14;

// Unitarity check threshold at construction time. Looser than the runtime
// tolerances so user-supplied matrices computed in single precision pass.
inline constexpr double kUnitaryTol = 1e-8;

inline constexpr double kPi = std::numbers::pi;

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when the trial state has no component in the target subspace
// (theta = 0, which would require infinitely many iterations).
struct unreachable_target_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits)
        throw capacity_error("qubit count " + std::to_string(n) +
                             " outside supported range [1, " +
                             std::to_string(kMaxQubits) + "]");
}

inline std::size_t dim_of(int n_qubits) {
    return std::size_t{1} << n_qubits;
}

// Bit of basis index x at qubit position q (qubit 0 is the 2^0 bit).
inline bool bit_at(std::size_t x, int q) {
    return (x >> q) & 1u;
}

} // namespace qsteer
