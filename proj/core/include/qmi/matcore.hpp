#pragma once

#include <Eigen/Dense>

#include "qmi/errors.hpp"
#include "qmi/pimatrix.hpp"

namespace qmi {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative threshold below which a singular value counts as zero.
inline constexpr double kDefaultRankTol = 1e-10;
/// Relative eigenvalue slack for positive-semidefiniteness decisions.
inline constexpr double kDefaultPsdTol = 1e-9;

/// Singular values of M, nonincreasing, length min(rows, cols).
Vector singular_values(const Matrix& m);

/// Smallest singular value above rank_tol * sigma_1(M); 0 for the zero matrix.
double smallest_nonzero_singular_value(const Matrix& m, double rank_tol = kDefaultRankTol);

/// Symmetric PSD square root via eigendecomposition. Eigenvalues in
/// [-tol*sigma_1, 0) are clamped to zero; anything lower throws
/// NotPositiveSemidefinite.
Matrix psd_sqrt(const Matrix& m, double tol = kDefaultPsdTol);

/// Moore-Penrose pseudo-inverse with singular values below
/// rank_tol * sigma_1 treated as zero.
Matrix pseudo_inverse(const Matrix& m, double rank_tol = kDefaultRankTol);

/// Generalized Schur complement b11 - b12 * b22^+ * b21, symmetrized.
Matrix schur_complement(const PiMatrix& pi, double rank_tol = kDefaultRankTol);

/// Count of singular values above rank_tol * sigma_1; 0 for the zero matrix.
Index numeric_rank(const Matrix& m, double rank_tol = kDefaultRankTol);

/// True iff y weakly majorizes x: every leading partial sum of x sorted
/// nonincreasing is dominated by the corresponding sum of y.
bool weak_majorizes(const Vector& y, const Vector& x);

/// First k entries of x, zero-padded on the right when k > x.size().
Vector truncate_or_pad(const Vector& x, Index k);

namespace detail {
/// (m + m^T) / 2, neutralizing round-off asymmetry before eigensolves.
Matrix symmetrized(const Matrix& m);
void require_finite(const Matrix& m, const char* what);
} // namespace detail

} // namespace qmi
