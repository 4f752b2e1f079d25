#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmi/matcore.hpp"
#include "qmi/pimatrix.hpp"

namespace qmi {

/// Verdict of the class-membership test for a partitioned matrix.
/// `in_class_strict` additionally certifies that the lower-right block is
/// negative definite, which makes the induced set bounded.
struct ClassLabel {
    enum class Value { not_in_class, in_class, in_class_strict };

    Value value = Value::not_in_class;
    std::string reason; // populated for not_in_class

    bool in_class() const { return value != Value::not_in_class; }
    bool strict() const { return value == Value::in_class_strict; }
};

/// Affine parametrization of a bounded QMI-induced set:
/// Z belongs to the set iff Z = x0 + lfac * S * rfac with sigma_1(S) <= 1.
struct FactoredForm {
    Matrix x0;   // p x q, the common center
    Matrix lfac; // p x p, symmetric positive definite
    Matrix rfac; // q x q, symmetric positive semidefinite
};

/// Tests the defining conditions: symmetry, block22 <= 0, PSD generalized
/// Schur complement, and ker(block22) contained in ker(block12).
ClassLabel classify(const PiMatrix& pi, double tol = kDefaultPsdTol);

/// Membership of the p x q matrix z in the induced set, decided by the
/// smallest eigenvalue of [I; z]^T Pi [I; z] with relative slack.
bool contains(const PiMatrix& pi, const Matrix& z, double tol = kDefaultPsdTol);

/// Requires a strict class member; throws NotStrictError otherwise.
FactoredForm factored_form(const PiMatrix& pi);

/// x0 + lfac * s * rfac. Throws ContractionViolated when sigma_1(s) > 1 + tol.
Matrix parametrize(const PiMatrix& pi, const Matrix& s, double tol = kDefaultPsdTol);

enum class SampleMode { interior, boundary };

/// Seeded sampler over a bounded induced set. Interior points come from
/// Gaussian parameter matrices rescaled into the unit contraction ball;
/// boundary points from random orthogonal factors with all retained
/// singular values equal to one. No uniformity is claimed.
std::vector<Matrix> sample(const PiMatrix& pi, Index n, std::uint64_t seed, SampleMode mode);

/// Bounded iff the class membership is strict. Throws NotInClassError when
/// the matrix is not in the class at all.
bool is_bounded(const PiMatrix& pi, double tol = kDefaultPsdTol);

} // namespace qmi
