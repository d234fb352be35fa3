#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qsteer/gates.hpp"
#include "support.hpp"

using namespace qsteer;

namespace {
std::vector<int> all_qubits(int n) {
    std::vector<int> qs(n);
    for (int i = 0; i < n; ++i) qs[i] = i;
    return qs;
}
} // namespace

TEST_CASE("H on qubit 0 of |0> gives |+>") {
    StateVector s = zero_state(1);
    apply_gate(s, Gate::h(0));
    CHECK(std::abs(s[0] - 1.0 / std::sqrt(2.0)) < kAlgebraTol);
    CHECK(std::abs(s[1] - 1.0 / std::sqrt(2.0)) < kAlgebraTol);
}

TEST_CASE("CZ truth table") {
    for (std::size_t x = 0; x < 4; ++x) {
        StateVector s = basis_state(2, x);
        apply_gate(s, Gate::cz(1, 0));
        const double expected = (x == 3) ? -1.0 : 1.0;
        CHECK(s[x] == cplx{expected});
    }
}

TEST_CASE("X on qubit 1 flips the 2^1 bit") {
    StateVector s = basis_state(2, 1); // |01>
    apply_gate(s, Gate::x(1));
    CHECK(s[3] == cplx{1.0}); // |11>
}

TEST_CASE("gate application validates targets") {
    StateVector s = zero_state(2);
    CHECK_THROWS_AS(apply_gate(s, Gate::x(2)), validation_error);
    CHECK_THROWS_AS(apply_gate(s, Gate::cz(0, 0)), validation_error);
    CHECK_THROWS_AS(apply_mcz(s, {0}), validation_error);
}

TEST_CASE("tensor of H prepares the Hadamard state") {
    for (int n : {1, 3, 5}) {
        StateVector s = zero_state(n);
        apply_tensor(s, TensorOp{std::vector<GateKind>(n, GateKind::H)});
        CHECK(qtest::max_diff(s, hadamard_state(n)) < kAlgebraTol);
    }
}

TEST_CASE("identity tensor leaves state unchanged") {
    auto gen = qtest::rng(3);
    const StateVector s0 = qtest::random_state(4, gen);
    StateVector s = s0;
    apply_tensor(s, TensorOp{std::vector<GateKind>(4, GateKind::I)});
    CHECK(qtest::max_diff(s, s0) == 0.0);
}

TEST_CASE("selection operators prepare the target basis state") {
    // omega = 10: factors X (x) I, |00> -> |10>
    StateVector s = zero_state(2);
    apply_tensor(s, selection_operators("10"));
    CHECK(s[2] == cplx{1.0});

    StateVector t = zero_state(4);
    apply_tensor(t, selection_operators("0110"));
    CHECK(t[6] == cplx{1.0});

    CHECK(selection_operators("00").factors == std::vector<GateKind>{GateKind::I, GateKind::I});
    CHECK(selection_operators("11").factors == std::vector<GateKind>{GateKind::X, GateKind::X});
    CHECK(selection_operators("01").factors == std::vector<GateKind>{GateKind::I, GateKind::X});
    CHECK_THROWS_AS(selection_operators("0a1"), validation_error);

    StateVector u = zero_state(3);
    CHECK_THROWS_AS(apply_tensor(u, selection_operators("01")), validation_error);
}

TEST_CASE("MCZ negates exactly the all-ones sub-basis") {
    for (int n : {2, 3, 5}) {
        StateVector s = hadamard_state(n);
        apply_mcz(s, all_qubits(n));
        const double amp = 1.0 / std::sqrt(static_cast<double>(dim_of(n)));
        for (std::size_t x = 0; x < s.dim(); ++x) {
            const double expected = (x == dim_of(n) - 1) ? -amp : amp;
            CHECK(std::abs(s[x] - expected) < kAlgebraTol);
        }
    }
}

TEST_CASE("MCZ is an involution") {
    auto gen = qtest::rng(17);
    const StateVector s0 = qtest::random_state(4, gen);
    StateVector s = s0;
    apply_mcz(s, {0, 2, 3});
    apply_mcz(s, {0, 2, 3});
    CHECK(qtest::max_diff(s, s0) == 0.0);
}

TEST_CASE("MCZ matches dense diagonal reference for n <= 6") {
    auto gen = qtest::rng(23);
    for (int n : {2, 4, 6}) {
        Matrix diag = Matrix::identity(dim_of(n));
        std::vector<int> qs = all_qubits(n);
        const std::size_t mask = dim_of(n) - 1;
        for (std::size_t x = 0; x < dim_of(n); ++x)
            if ((x & mask) == mask) diag(x, x) = -1.0;
        const StateVector s0 = qtest::random_state(n, gen);
        StateVector s = s0;
        apply_mcz(s, qs);
        CHECK(qtest::max_diff(s, qtest::dense_apply(diag, s0)) < kAlgebraTol);
    }
}

TEST_CASE("dense unitary application matches reference and inverts") {
    auto gen = qtest::rng(31);
    const Matrix u = qtest::random_unitary(4, gen);
    const StateVector s0 = qtest::random_state(4, gen);

    // apply on qubits {1, 3}; dense reference built by explicit embedding
    StateVector s = s0;
    apply_gate(s, Gate::dense(u, {1, 3}));

    Matrix full(dim_of(4), dim_of(4));
    for (std::size_t i = 0; i < dim_of(4); ++i)
        for (std::size_t j = 0; j < dim_of(4); ++j) {
            if ((i & ~std::size_t{0b1010}) != (j & ~std::size_t{0b1010})) continue;
            const std::size_t si = (bit_at(i, 1) ? 1 : 0) | (bit_at(i, 3) ? 2 : 0);
            const std::size_t sj = (bit_at(j, 1) ? 1 : 0) | (bit_at(j, 3) ? 2 : 0);
            full(i, j) = u(si, sj);
        }
    CHECK(qtest::max_diff(s, qtest::dense_apply(full, s0)) < kAlgebraTol);

    apply_gate(s, Gate::dense(u.adjoint(), {1, 3}));
    CHECK(qtest::max_diff(s, s0) < kNormTol);
}

TEST_CASE("dense gate construction rejects non-unitary matrices") {
    Matrix bad = Matrix::identity(2);
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(Gate::dense(bad, {0}), validation_error);
}

TEST_CASE("norm is preserved by random gate sequences") {
    auto gen = qtest::rng(41);
    StateVector s = qtest::random_state(6, gen);
    for (int i = 0; i < 200; ++i) {
        const int q = static_cast<int>(gen() % 6);
        switch (gen() % 4) {
        case 0: apply_gate(s, Gate::h(q)); break;
        case 1: apply_gate(s, Gate::x(q)); break;
        case 2: apply_gate(s, Gate::z(q)); break;
        default: apply_mcz(s, {q, (q + 1) % 6}); break;
        }
    }
    CHECK(std::abs(s.norm() - 1.0) < kNormTol);
}
