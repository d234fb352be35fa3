#pragma once

#include <array>
#include <string>
#include <vector>

#include "qsteer/matrix.hpp"
#include "qsteer/qstate.hpp"

namespace qsteer {

enum class GateKind { I, X, Z, H, CZ, MCZ, Dense };

struct Gate {
    GateKind kind = GateKind::I;
    std::vector<int> targets;
    Matrix matrix; // Dense only; row/column bit t corresponds to targets[t]

    static Gate i(int q) { return {GateKind::I, {q}, {}}; }
    static Gate x(int q) { return {GateKind::X, {q}, {}}; }
    static Gate z(int q) { return {GateKind::Z, {q}, {}}; }
    static Gate h(int q) { return {GateKind::H, {q}, {}}; }
    static Gate cz(int qa, int qb) { return {GateKind::CZ, {qa, qb}, {}}; }
    static Gate mcz(std::vector<int> qs) { return {GateKind::MCZ, std::move(qs), {}}; }

    static Gate dense(Matrix u, std::vector<int> qs) {
        const std::size_t want = dim_of(static_cast<int>(qs.size()));
        if (u.rows != want || u.cols != want)
            throw validation_error("dense gate: matrix size does not match qubit count");
        require_unitary(u, "dense gate");
        return {GateKind::Dense, std::move(qs), std::move(u)};
    }
};

namespace detail {

inline void check_targets(const StateVector& s, const std::vector<int>& qs,
                          std::size_t min_count = 1) {
    if (qs.size() < min_count)
        throw validation_error("gate requires at least " + std::to_string(min_count) +
                               " target qubit(s)");
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (qs[i] < 0 || qs[i] >= s.n_qubits)
            throw validation_error("target qubit " + std::to_string(qs[i]) +
                                   " out of range for " + std::to_string(s.n_qubits) +
                                   " qubits");
        for (std::size_t j = i + 1; j < qs.size(); ++j)
            if (qs[i] == qs[j])
                throw validation_error("duplicate target qubit " + std::to_string(qs[i]));
    }
}

// Stride-pair sweep keyed by the target qubit's bit.
inline void apply_1q(StateVector& s, int q, const std::array<cplx, 4>& u) {
    const std::size_t half = std::size_t{1} << q;
    const std::size_t stride = half << 1;
    for (std::size_t base = 0; base < s.dim(); base += stride)
        for (std::size_t i = 0; i < half; ++i) {
            cplx& a0 = s[base + i];
            cplx& a1 = s[base + i + half];
            const cplx t0 = u[0] * a0 + u[1] * a1;
            const cplx t1 = u[2] * a0 + u[3] * a1;
            a0 = t0;
            a1 = t1;
        }
}

// Gather/scatter over the sub-basis spanned by the listed qubits.
inline void apply_dense(StateVector& s, const std::vector<int>& qs, const Matrix& u) {
    const int k = static_cast<int>(qs.size());
    const std::size_t sub = dim_of(k);
    std::size_t free_mask = s.dim() - 1;
    for (int q : qs) free_mask &= ~(std::size_t{1} << q);

    std::vector<cplx> in(sub), out(sub);
    // iterate over all assignments of the non-target qubits
    for (std::size_t outer = 0;; outer = ((outer | ~free_mask) + 1) & free_mask) {
        for (std::size_t t = 0; t < sub; ++t) {
            std::size_t idx = outer;
            for (int b = 0; b < k; ++b)
                if (bit_at(t, b)) idx |= std::size_t{1} << qs[b];
            in[t] = s[idx];
        }
        for (std::size_t i = 0; i < sub; ++i) {
            cplx acc{};
            for (std::size_t j = 0; j < sub; ++j) acc += u(i, j) * in[j];
            out[i] = acc;
        }
        for (std::size_t t = 0; t < sub; ++t) {
            std::size_t idx = outer;
            for (int b = 0; b < k; ++b)
                if (bit_at(t, b)) idx |= std::size_t{1} << qs[b];
            s[idx] = out[t];
        }
        if (outer == free_mask) break;
    }
}

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

} // namespace detail

inline void apply_mcz(StateVector& s, const std::vector<int>& qubits) {
    detail::check_targets(s, qubits, 2);
    std::size_t mask = 0;
    for (int q : qubits) mask |= std::size_t{1} << q;
    for (std::size_t x = 0; x < s.dim(); ++x)
        if ((x & mask) == mask) s[x] = -s[x];
}

inline void apply_gate(StateVector& s, const Gate& g) {
    detail::check_targets(s, g.targets);
    switch (g.kind) {
    case GateKind::I:
        break;
    case GateKind::X:
        detail::apply_1q(s, g.targets[0], {cplx{0}, cplx{1}, cplx{1}, cplx{0}});
        break;
    case GateKind::Z:
        detail::apply_1q(s, g.targets[0], {cplx{1}, cplx{0}, cplx{0}, cplx{-1}});
        break;
    case GateKind::H:
        detail::apply_1q(s, g.targets[0],
                         {cplx{detail::kInvSqrt2}, cplx{detail::kInvSqrt2},
                          cplx{detail::kInvSqrt2}, cplx{-detail::kInvSqrt2}});
        break;
    case GateKind::CZ:
        if (g.targets.size() != 2) throw validation_error("CZ takes exactly 2 qubits");
        apply_mcz(s, g.targets);
        break;
    case GateKind::MCZ:
        apply_mcz(s, g.targets);
        break;
    case GateKind::Dense:
        detail::apply_dense(s, g.targets, g.matrix);
        break;
    }
}

/// Tensor product of single-qubit gates, one factor per qubit. Factors are
/// listed high-to-low: factors[0] acts on qubit n-1, factors.back() on
/// qubit 0, matching the written order of a bit string.
struct TensorOp {
    std::vector<GateKind> factors;
};

inline void apply_tensor(StateVector& s, const TensorOp& t) {
    const int n = static_cast<int>(t.factors.size());
    if (n != s.n_qubits)
        throw validation_error("tensor op arity " + std::to_string(n) +
                               " does not match state with " +
                               std::to_string(s.n_qubits) + " qubits");
    for (int i = 0; i < n; ++i) {
        const int q = n - 1 - i;
        switch (t.factors[i]) {
        case GateKind::I: break;
        case GateKind::X: apply_gate(s, Gate::x(q)); break;
        case GateKind::Z: apply_gate(s, Gate::z(q)); break;
        case GateKind::H: apply_gate(s, Gate::h(q)); break;
        default:
            throw validation_error("tensor op factors must be single-qubit gates");
        }
    }
}

/// Selection layer for a target bit string: X where the bit is 1, identity
/// where it is 0. Applied to |0^n> it prepares the basis state |omega>.
inline TensorOp selection_operators(const std::string& omega) {
    TensorOp t;
    t.factors.reserve(omega.size());
    for (char c : omega) {
        if (c == '0') t.factors.push_back(GateKind::I);
        else if (c == '1') t.factors.push_back(GateKind::X);
        else throw validation_error("bit string may contain only '0' and '1'");
    }
    return t;
}

} // namespace qsteer
