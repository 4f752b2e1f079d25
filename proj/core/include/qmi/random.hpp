#pragma once

#include <random>

#include "qmi/matcore.hpp"

namespace qmi::rnd {

using Engine = std::mt19937_64;

inline Matrix gaussian(Engine& rng, Index rows, Index cols) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            m(i, j) = normal(rng);
        }
    }
    return m;
}

inline Matrix uniform(Engine& rng, Index rows, Index cols, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            m(i, j) = u(rng);
        }
    }
    return m;
}

/// Haar-distributed orthogonal matrix: QR of a Gaussian sample with the
/// R diagonal signs folded into Q.
inline Matrix orthogonal(Engine& rng, Index n) {
    const Matrix g = gaussian(rng, n, n);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index i = 0; i < n; ++i) {
        if (r(i, i) < 0) {
            q.col(i) = -q.col(i);
        }
    }
    return q;
}

/// Matrix with largest singular value at most 1.
inline Matrix contraction(Engine& rng, Index rows, Index cols) {
    Matrix g = gaussian(rng, rows, cols);
    const double top = singular_values(g)(0);
    if (top > 1.0) {
        g /= top;
    }
    return g;
}

/// Symmetric positive definite matrix A A^T + eps I.
inline Matrix spd(Engine& rng, Index n, double eps = 1e-2) {
    const Matrix a = gaussian(rng, n, n);
    return a * a.transpose() + eps * Matrix::Identity(n, n);
}

} // namespace qmi::rnd
