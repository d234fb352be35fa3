#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qsteer/gates.hpp"
#include "qsteer/matrix.hpp"
#include "qsteer/qstate.hpp"

namespace qsteer {

enum class OpKind { H, X, Z, CZ, MCZ, Unitary };

/// One flat circuit operation. Unitary ops carry a dense matrix and a label;
/// they evaluate in the simulator but are not emissible as OpenQASM.
struct CircuitOp {
    OpKind kind;
    std::vector<int> qubits; // CZ: {control, target}; matrix bit t = qubits[t]
    std::shared_ptr<const Matrix> matrix;
    std::string label;

    static CircuitOp h(int q) { return {OpKind::H, {q}, nullptr, {}}; }
    static CircuitOp x(int q) { return {OpKind::X, {q}, nullptr, {}}; }
    static CircuitOp z(int q) { return {OpKind::Z, {q}, nullptr, {}}; }
    static CircuitOp cz(int ctrl, int tgt) { return {OpKind::CZ, {ctrl, tgt}, nullptr, {}}; }
    static CircuitOp mcz(std::vector<int> qs) { return {OpKind::MCZ, std::move(qs), nullptr, {}}; }
    static CircuitOp unitary(std::string label, std::vector<int> qs, Matrix u) {
        require_unitary(u, label.c_str());
        return {OpKind::Unitary, std::move(qs),
                std::make_shared<const Matrix>(std::move(u)), std::move(label)};
    }
};

struct CircuitIR {
    int n_qubits = 0;
    std::vector<CircuitOp> ops;
    // set on diffuser blocks: the circuit realizes the negative of the
    // text-convention operator (a global phase, invisible to measurement)
    bool global_phase_negated = false;
};

inline void apply_circuit(StateVector& s, const CircuitIR& c) {
    if (s.n_qubits != c.n_qubits)
        throw validation_error("circuit applied to state of wrong size");
    for (const auto& op : c.ops) {
        switch (op.kind) {
        case OpKind::H: apply_gate(s, Gate::h(op.qubits[0])); break;
        case OpKind::X: apply_gate(s, Gate::x(op.qubits[0])); break;
        case OpKind::Z: apply_gate(s, Gate::z(op.qubits[0])); break;
        case OpKind::CZ: apply_gate(s, Gate::cz(op.qubits[0], op.qubits[1])); break;
        case OpKind::MCZ: apply_mcz(s, op.qubits); break;
        case OpKind::Unitary:
            detail::apply_dense(s, op.qubits, *op.matrix);
            break;
        }
    }
}

/// Dense unitary of the whole circuit, column by column. Small-n cross-check
/// path only.
inline Matrix dense_unitary(const CircuitIR& c) {
    const std::size_t n = dim_of(c.n_qubits);
    Matrix u(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        StateVector col = basis_state(c.n_qubits, j);
        apply_circuit(col, c);
        for (std::size_t i = 0; i < n; ++i) u(i, j) = col[i];
    }
    return u;
}

namespace detail {

// X-sandwiched multi-controlled Z on the given qubits: 1 - 2|0...0><0...0|
// restricted to that qubit set. A single qubit degenerates to X Z X.
inline void append_zero_reflection(std::vector<CircuitOp>& ops, const std::vector<int>& qubits) {
    for (int q : qubits) ops.push_back(CircuitOp::x(q));
    if (qubits.size() == 1)
        ops.push_back(CircuitOp::z(qubits[0]));
    else if (qubits.size() == 2)
        ops.push_back(CircuitOp::cz(qubits[1], qubits[0]));
    else
        ops.push_back(CircuitOp::mcz(qubits));
    for (int q : qubits) ops.push_back(CircuitOp::x(q));
}

inline std::vector<int> all_qubits(int n) {
    std::vector<int> qs(n);
    for (int i = 0; i < n; ++i) qs[i] = i;
    return qs;
}

} // namespace detail

/// U_0 = X^(x)n . CC...CZ . X^(x)n, the reflection marking |0^n>.
inline CircuitIR build_zero_oracle(int n) {
    if (n < 2) throw validation_error("zero oracle needs at least 2 qubits");
    check_qubit_count(n);
    CircuitIR c{n, {}, false};
    detail::append_zero_reflection(c.ops, detail::all_qubits(n));
    return c;
}

/// U_omega = A_omega . U_0 . A_omega with A_omega the X/I selection layer.
inline CircuitIR build_basis_oracle(const std::string& omega) {
    const int n = static_cast<int>(omega.size());
    if (n < 2) throw validation_error("basis oracle needs at least 2 qubits");
    check_qubit_count(n);
    CircuitIR c{n, {}, false};
    auto delta_layer = [&] {
        for (int i = 0; i < n; ++i) {
            const char bit = omega[i];
            if (bit == '1') c.ops.push_back(CircuitOp::x(n - 1 - i));
            else if (bit != '0')
                throw validation_error("bit string may contain only '0' and '1'");
        }
    };
    delta_layer();
    detail::append_zero_reflection(c.ops, detail::all_qubits(n));
    delta_layer();
    return c;
}

/// A steering block as a circuit fragment together with its inverse.
struct SteeringBlock {
    std::vector<CircuitOp> forward;
    std::vector<CircuitOp> inverse;

    static SteeringBlock hadamard_layer(int n) {
        SteeringBlock b;
        for (int q = 0; q < n; ++q) b.forward.push_back(CircuitOp::h(q));
        b.inverse = b.forward; // self-inverse
        return b;
    }
    static SteeringBlock selection_layer(const std::string& omega) {
        SteeringBlock b;
        const int n = static_cast<int>(omega.size());
        for (int i = 0; i < n; ++i) {
            if (omega[i] == '1') b.forward.push_back(CircuitOp::x(n - 1 - i));
            else if (omega[i] != '0')
                throw validation_error("bit string may contain only '0' and '1'");
        }
        b.inverse = b.forward;
        return b;
    }
    static SteeringBlock opaque(const std::string& label, std::vector<int> qubits, Matrix u) {
        SteeringBlock b;
        Matrix u_dag = u.adjoint();
        b.forward.push_back(CircuitOp::unitary(label, qubits, std::move(u)));
        b.inverse.push_back(CircuitOp::unitary(label + "_dag", std::move(qubits), std::move(u_dag)));
        return b;
    }
};

/// Circuit form of the diffuser: G† layer, zero reflection, G layer. This
/// realizes -(2|g><g| - 1); the flag records the global-phase offset from
/// the library's text-convention operator.
inline CircuitIR build_diffuser(const SteeringBlock& steering, int n) {
    if (n < 2) throw validation_error("diffuser needs at least 2 qubits");
    check_qubit_count(n);
    CircuitIR c{n, {}, true};
    c.ops.insert(c.ops.end(), steering.inverse.begin(), steering.inverse.end());
    detail::append_zero_reflection(c.ops, detail::all_qubits(n));
    c.ops.insert(c.ops.end(), steering.forward.begin(), steering.forward.end());
    return c;
}

struct GroverCircuitSpec {
    int n_qubits = 0;
    SteeringBlock oracle_steering;
    // 0 = oracle reflects about a full-register state; m > 0 restricts the
    // zero reflection (and its steering sandwich) to the low m qubits
    int oracle_subsystem_m = 0;
    SteeringBlock diffusion_steering;
    int iterations = 0;
};

/// Full search circuit: state preparation, then `iterations` repetitions of
/// oracle block followed by diffuser block.
inline CircuitIR build_grover_circuit(const GroverCircuitSpec& spec) {
    const int n = spec.n_qubits;
    if (n < 2) throw validation_error("grover circuit needs at least 2 qubits");
    check_qubit_count(n);
    if (spec.oracle_subsystem_m < 0 || spec.oracle_subsystem_m >= n)
        throw validation_error("oracle subsystem size out of range");
    if (spec.iterations < 0) throw validation_error("iteration count must be >= 0");

    CircuitIR c{n, {}, false};
    c.ops.insert(c.ops.end(), spec.diffusion_steering.forward.begin(),
                 spec.diffusion_steering.forward.end());
    const std::vector<int> oracle_qubits =
        detail::all_qubits(spec.oracle_subsystem_m > 0 ? spec.oracle_subsystem_m : n);
    for (int it = 0; it < spec.iterations; ++it) {
        c.ops.insert(c.ops.end(), spec.oracle_steering.inverse.begin(),
                     spec.oracle_steering.inverse.end());
        detail::append_zero_reflection(c.ops, oracle_qubits);
        c.ops.insert(c.ops.end(), spec.oracle_steering.forward.begin(),
                     spec.oracle_steering.forward.end());
        c.ops.insert(c.ops.end(), spec.diffusion_steering.inverse.begin(),
                     spec.diffusion_steering.inverse.end());
        detail::append_zero_reflection(c.ops, detail::all_qubits(n));
        c.ops.insert(c.ops.end(), spec.diffusion_steering.forward.begin(),
                     spec.diffusion_steering.forward.end());
    }
    return c;
}

} // namespace qsteer
