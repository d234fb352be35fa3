#pragma once

#include <cassert>
#include <cmath>
#include <vector>

#include "qsteer/common.hpp"

namespace qsteer {

/// Dense row-major complex matrix. Small and unclever on purpose: the
/// library only materializes matrices for steering operators, kernel rows,
/// and test cross-checks.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    cplx& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Matrix adjoint() const {
        Matrix m(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    std::vector<cplx> column(std::size_t j) const {
        std::vector<cplx> c(rows);
        for (std::size_t i = 0; i < rows; ++i) c[i] = (*this)(i, j);
        return c;
    }
};

inline Matrix operator*(const Matrix& x, const Matrix& y) {
    assert(x.cols == y.rows);
    Matrix m(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const cplx xik = x(i, k);
            if (xik == cplx{}) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                m(i, j) += xik * y(k, j);
        }
    return m;
}

inline std::vector<cplx> operator*(const Matrix& m, const std::vector<cplx>& v) {
    assert(m.cols == v.size());
    std::vector<cplx> out(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i) {
        cplx s{};
        for (std::size_t j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

/// Max-entry deviation of U†U from the identity.
inline double unitarity_defect(const Matrix& u) {
    if (u.rows != u.cols) return 1.0;
    const Matrix p = u.adjoint() * u;
    double worst = 0.0;
    for (std::size_t i = 0; i < p.rows; ++i)
        for (std::size_t j = 0; j < p.cols; ++j) {
            const cplx want = (i == j) ? cplx{1.0} : cplx{};
            worst = std::max(worst, std::abs(p(i, j) - want));
        }
    return worst;
}

inline void require_unitary(const Matrix& u, const char* what) {
    if (unitarity_defect(u) > kUnitaryTol)
        throw validation_error(std::string(what) + ": matrix is not unitary");
}

/// Completes a unit vector to a unitary matrix whose first column is that
/// vector. Remaining columns come from Gram-Schmidt over the standard basis
/// in index order, so the completion is deterministic. Callers must not
/// depend on the completed columns beyond unitarity.
inline Matrix complete_unitary(const std::vector<cplx>& first_column) {
    const std::size_t n = first_column.size();
    Matrix u(n, n);
    std::vector<std::vector<cplx>> cols;
    cols.push_back(first_column);
    for (std::size_t e = 0; e < n && cols.size() < n; ++e) {
        std::vector<cplx> v(n);
        v[e] = 1.0;
        // two orthogonalization passes for numerical stability
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& c : cols) {
                cplx ov{};
                for (std::size_t i = 0; i < n; ++i) ov += std::conj(c[i]) * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= ov * c[i];
            }
        }
        double nrm2 = 0.0;
        for (const auto& x : v) nrm2 += std::norm(x);
        if (nrm2 < 1e-16) continue; // e_i already in the span
        const double inv = 1.0 / std::sqrt(nrm2);
        for (auto& x : v) x *= inv;
        cols.push_back(std::move(v));
    }
    assert(cols.size() == n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            u(i, j) = cols[j][i];
    return u;
}

} // namespace qsteer
