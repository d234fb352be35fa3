#pragma once

#include <algorithm>
#include <cstdint>
#include <variant>
#include <vector>

#include "qsteer/gates.hpp"
#include "qsteer/matrix.hpp"
#include "qsteer/qstate.hpp"

namespace qsteer {

// ---------------------------------------------------------------------------
// Target sets (what the oracle marks)
// ---------------------------------------------------------------------------

/// Explicit subset of computational basis indices; M = indices.size().
struct ExplicitSubset {
    int n_qubits;
    std::vector<std::size_t> indices; // distinct, each < 2^n

    ExplicitSubset(int n, std::vector<std::size_t> idx)
        : n_qubits(n), indices(std::move(idx)) {
        check_qubit_count(n);
        std::sort(indices.begin(), indices.end());
        for (std::size_t i = 0; i < indices.size(); ++i) {
            if (indices[i] >= dim_of(n))
                throw validation_error("subset index out of range");
            if (i > 0 && indices[i] == indices[i - 1])
                throw validation_error("subset indices must be distinct");
        }
    }
};

/// Marked state |omega> = A|0^n> generated by a unitary steering operator.
struct SteeredState {
    Matrix a;
    explicit SteeredState(Matrix a_) : a(std::move(a_)) {
        require_unitary(a, "steering operator");
    }
};

/// Steering set of M rows of a unitary basis transformation Lambda; the
/// marked directions are |y> = sum_x Lambda_{yx} |x> for y in the row set.
struct KernelSet {
    Matrix lambda;
    std::vector<std::size_t> rows;
    KernelSet(Matrix lam, std::vector<std::size_t> rs)
        : lambda(std::move(lam)), rows(std::move(rs)) {
        require_unitary(lambda, "kernel transformation");
        std::sort(rows.begin(), rows.end());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i] >= lambda.rows)
                throw validation_error("kernel row index out of range");
            if (i > 0 && rows[i] == rows[i - 1])
                throw validation_error("kernel row indices must be distinct");
        }
    }
};

/// Marks |k>_r (x) B|0^m> for every index-register value k; the low-order m
/// qubits are the steered subsystem.
struct SubsystemZero {
    int m;
    Matrix b; // unitary on 2^m dimensions
    SubsystemZero(int m_, Matrix b_) : m(m_), b(std::move(b_)) {
        if (m < 1) throw validation_error("subsystem must span at least one qubit");
        if (b.rows != dim_of(m) || b.cols != dim_of(m))
            throw validation_error("subsystem steering matrix size mismatch");
        require_unitary(b, "subsystem steering operator");
    }
};

using TargetSet = std::variant<ExplicitSubset, SteeredState, KernelSet, SubsystemZero>;

// ---------------------------------------------------------------------------
// Reflections
// ---------------------------------------------------------------------------

namespace detail {

/// Index-predicate sign flip: psi_x -> -psi_x for x in the marked set.
struct SignFlipForm {
    std::vector<std::size_t> indices; // sorted
};

/// sign * (1 - 2|v><v|). sign=-1 gives the diffuser 2|v><v| - 1.
struct HouseholderForm {
    std::vector<cplx> axis; // unit vector
    int sign;               // +1 oracle convention, -1 diffuser convention
};

/// 1 - 2 L†L where L holds the M selected rows of Lambda.
struct KernelForm {
    Matrix selected_rows; // M x N
};

/// 1_r (x) [1_m - 2|v><v|] acting on contiguous low-order blocks.
struct SubsystemForm {
    int m;
    std::vector<cplx> axis; // unit vector of length 2^m
};

using ReflectionForm = std::variant<SignFlipForm, HouseholderForm, KernelForm, SubsystemForm>;

inline void rank_one_update(std::vector<cplx>& amps, const std::vector<cplx>& v,
                            std::size_t offset, int sign) {
    cplx ov{};
    for (std::size_t i = 0; i < v.size(); ++i) ov += std::conj(v[i]) * amps[offset + i];
    ov *= 2.0;
    if (sign > 0) {
        for (std::size_t i = 0; i < v.size(); ++i) amps[offset + i] -= ov * v[i];
    } else {
        for (std::size_t i = 0; i < v.size(); ++i)
            amps[offset + i] = ov * v[i] - amps[offset + i];
    }
}

} // namespace detail

class Reflection {
public:
    Reflection(int n, detail::ReflectionForm form)
        : n_qubits_(n), form_(std::move(form)) {}

    int n_qubits() const { return n_qubits_; }

    void apply(StateVector& s) const {
        if (s.n_qubits != n_qubits_)
            throw validation_error("reflection applied to state of wrong size");
        std::visit([&](const auto& f) { apply_impl(s, f); }, form_);
    }

    StateVector applied(StateVector s) const {
        apply(s);
        return s;
    }

    /// Dense materialization, intended for small-n cross-checks.
    Matrix dense() const {
        const std::size_t n = dim_of(n_qubits_);
        Matrix u(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            StateVector col = basis_state(n_qubits_, j);
            apply(col);
            for (std::size_t i = 0; i < n; ++i) u(i, j) = col[i];
        }
        return u;
    }

private:
    static void apply_impl(StateVector& s, const detail::SignFlipForm& f) {
        for (std::size_t x : f.indices) s[x] = -s[x];
    }
    static void apply_impl(StateVector& s, const detail::HouseholderForm& f) {
        detail::rank_one_update(s.amps, f.axis, 0, f.sign);
    }
    static void apply_impl(StateVector& s, const detail::KernelForm& f) {
        const Matrix& l = f.selected_rows;
        // psi -> psi - 2 L†(L psi); exact zeros in L are skipped so the
        // separable special cases reduce bitwise to plain sign flips
        std::vector<cplx> proj(l.rows);
        for (std::size_t y = 0; y < l.rows; ++y) {
            cplx acc{};
            for (std::size_t x = 0; x < l.cols; ++x) {
                const cplx c = l(y, x);
                if (c == cplx{}) continue;
                acc += c * s[x];
            }
            proj[y] = 2.0 * acc;
        }
        for (std::size_t y = 0; y < l.rows; ++y) {
            const cplx p = proj[y];
            for (std::size_t x = 0; x < l.cols; ++x) {
                const cplx c = l(y, x);
                if (c == cplx{}) continue;
                s[x] -= std::conj(c) * p;
            }
        }
    }
    static void apply_impl(StateVector& s, const detail::SubsystemForm& f) {
        const std::size_t block = f.axis.size();
        for (std::size_t off = 0; off < s.dim(); off += block)
            detail::rank_one_update(s.amps, f.axis, off, +1);
    }

    int n_qubits_;
    detail::ReflectionForm form_;
};

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// U_omega = 1 - 2|omega><omega| for a single basis target.
inline Reflection phase_oracle_single(std::size_t omega, int n) {
    check_qubit_count(n);
    if (omega >= dim_of(n)) throw validation_error("target index out of range");
    return Reflection(n, detail::SignFlipForm{{omega}});
}

/// U_Omega negates every amplitude in the subset and fixes the rest.
inline Reflection phase_oracle_subset(const ExplicitSubset& omega_set) {
    return Reflection(omega_set.n_qubits, detail::SignFlipForm{omega_set.indices});
}

/// Householder reflection about |omega> = A|0^n>.
inline Reflection steered_oracle(const Matrix& a, int n) {
    check_qubit_count(n);
    if (a.rows != dim_of(n) || a.cols != dim_of(n))
        throw validation_error("steering operator size mismatch");
    require_unitary(a, "steered oracle");
    return Reflection(n, detail::HouseholderForm{a.column(0), +1});
}

/// Canonical diffuser U_g = 2|g><g| - 1 with |g> = G|0^n> (text sign
/// convention; the circuit module emits the global-phase-negated form).
inline Reflection diffusion_operator(const Matrix& g, int n) {
    check_qubit_count(n);
    if (g.rows != dim_of(n) || g.cols != dim_of(n))
        throw validation_error("diffusion steering operator size mismatch");
    require_unitary(g, "diffusion operator");
    return Reflection(n, detail::HouseholderForm{g.column(0), -1});
}

/// Diffuser about an explicitly given state, 2|g><g| - 1.
inline Reflection diffusion_about(const StateVector& g) {
    if (std::abs(g.norm() - 1.0) > kUnitaryTol)
        throw validation_error("diffusion_about: state must be normalized");
    return Reflection(g.n_qubits, detail::HouseholderForm{g.amps, -1});
}

/// In-plane repair reflection U_par = 2|Omega><Omega| - 1 about the marked
/// direction. Simulator-level only; the construction presumes |Omega| known.
inline Reflection parallel_reflection(const StateVector& omega_state) {
    const double nrm = omega_state.norm();
    if (nrm < kAlgebraTol)
        throw validation_error("parallel_reflection: zero-norm state");
    if (std::abs(nrm - 1.0) > kUnitaryTol)
        throw validation_error("parallel_reflection: state must be normalized");
    return Reflection(omega_state.n_qubits,
                      detail::HouseholderForm{omega_state.amps, -1});
}

/// Generalized oracle 1 - 2 sum_{xx'} K_{xx'} |x><x'| with the steering
/// kernel K = sum_{y in Omega} Lambda†_{x'y} Lambda_{yx}.
inline Reflection kernel_oracle(const KernelSet& k) {
    std::size_t n = 0;
    while (dim_of(static_cast<int>(n)) < k.lambda.rows) ++n;
    if (dim_of(static_cast<int>(n)) != k.lambda.rows)
        throw validation_error("kernel transformation dimension must be a power of two");
    if (static_cast<int>(n) > kMaxKernelQubits)
        throw capacity_error("kernel oracle capped at " +
                             std::to_string(kMaxKernelQubits) + " qubits");
    Matrix sel(k.rows.size(), k.lambda.cols);
    for (std::size_t i = 0; i < k.rows.size(); ++i)
        for (std::size_t x = 0; x < k.lambda.cols; ++x)
            sel(i, x) = k.lambda(k.rows[i], x);
    return Reflection(static_cast<int>(n), detail::KernelForm{std::move(sel)});
}

/// 1_r (x) B [1_m - 2|0^m><0^m|] B† with the m steered qubits low-order.
inline Reflection subsystem_zero_oracle(int m, const Matrix& b, int n) {
    check_qubit_count(n);
    if (m >= n) throw validation_error("subsystem must be smaller than the full register");
    SubsystemZero checked(m, b); // validates m and unitarity
    return Reflection(n, detail::SubsystemForm{m, checked.b.column(0)});
}

/// Oracle for any TargetSet variant.
inline Reflection oracle_for(const TargetSet& t, int n) {
    return std::visit(
        [&](const auto& v) -> Reflection {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ExplicitSubset>) {
                if (v.n_qubits != n) throw validation_error("target set size mismatch");
                return phase_oracle_subset(v);
            } else if constexpr (std::is_same_v<T, SteeredState>) {
                return steered_oracle(v.a, n);
            } else if constexpr (std::is_same_v<T, KernelSet>) {
                Reflection r = kernel_oracle(v);
                if (r.n_qubits() != n) throw validation_error("target set size mismatch");
                return r;
            } else {
                return subsystem_zero_oracle(v.m, v.b, n);
            }
        },
        t);
}

/// Unnormalized projection of `s` onto the marked subspace of `t`.
inline StateVector marked_component(const StateVector& s, const TargetSet& t) {
    return std::visit(
        [&](const auto& v) -> StateVector {
            using T = std::decay_t<decltype(v)>;
            StateVector out(s.n_qubits);
            if constexpr (std::is_same_v<T, ExplicitSubset>) {
                for (std::size_t x : v.indices) out[x] = s[x];
            } else if constexpr (std::is_same_v<T, SteeredState>) {
                const auto omega = v.a.column(0);
                cplx ov{};
                for (std::size_t i = 0; i < s.dim(); ++i)
                    ov += std::conj(omega[i]) * s[i];
                for (std::size_t i = 0; i < s.dim(); ++i) out[i] = ov * omega[i];
            } else if constexpr (std::is_same_v<T, KernelSet>) {
                for (std::size_t yi = 0; yi < v.rows.size(); ++yi) {
                    const std::size_t y = v.rows[yi];
                    cplx ov{};
                    for (std::size_t x = 0; x < s.dim(); ++x)
                        ov += v.lambda(y, x) * s[x];
                    for (std::size_t x = 0; x < s.dim(); ++x)
                        out[x] += std::conj(v.lambda(y, x)) * ov;
                }
            } else {
                const auto axis = v.b.column(0);
                const std::size_t block = axis.size();
                for (std::size_t off = 0; off < s.dim(); off += block) {
                    cplx ov{};
                    for (std::size_t i = 0; i < block; ++i)
                        ov += std::conj(axis[i]) * s[off + i];
                    for (std::size_t i = 0; i < block; ++i)
                        out[off + i] = ov * axis[i];
                }
            }
            return out;
        },
        t);
}

} // namespace qsteer
