// ops.hpp — Elementary operators and small dense-matrix utilities

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>

namespace declab::ops {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using complexd = std::complex<double>;

inline Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

inline Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

// Standard Hermitian sigma_y. Some texts use -i*sigma_y as the second basis
// element; component norms are unchanged by that global phase.
inline Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0, complexd(0, -1), complexd(0, 1), 0;
    return m;
}

inline Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

// Truncated bosonic lowering operator: b|k> = sqrt(k)|k-1>.
inline Matrix boson_lowering(Eigen::Index dim) {
    Matrix b = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 1; k < dim; ++k) {
        b(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    return b;
}

// Position-like coupling operator b + b† on a truncated oscillator.
inline Matrix boson_position(Eigen::Index dim) {
    const Matrix b = boson_lowering(dim);
    return b + b.adjoint();
}

// Number operator b†b = diag(0, 1, ..., dim-1).
inline Matrix boson_number(Eigen::Index dim) {
    Matrix n = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

inline Matrix spin_lowering() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// Largest entry magnitude (Chebyshev norm).
inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const Matrix& m) {
    return m.allFinite();
}

// Entrywise deviation from Hermiticity, relative to the largest entry.
inline bool is_hermitian(const Matrix& m, double rel_tol = 1e-12) {
    const double scale = max_abs(m);
    return max_abs(m - m.adjoint()) <= rel_tol * (scale > 0.0 ? scale : 1.0);
}

inline double frobenius(const Matrix& m) { return m.norm(); }

inline double unitarity_defect(const Matrix& u) {
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

} // namespace declab::ops
