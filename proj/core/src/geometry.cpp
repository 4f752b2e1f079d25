#include "qmi/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace qmi {

namespace {

// Shared eigendecomposition of -block22 and of the Schur complement; every
// quantity of one summary is derived from a single instance so the results
// stay mutually consistent under round-off.
struct Parts {
    Matrix x0;   // p x q center
    Matrix lfac; // (-block22)^{-1/2}
    Matrix rfac; // (schur complement)^{1/2}
    Vector lsv;  // singular values of lfac, nonincreasing
    Vector rsv;  // singular values of rfac, nonincreasing
    Matrix lvec; // columns aligned with lsv
    Matrix rvec; // columns aligned with rsv
    double l_min = 0.0;  // smallest singular value of lfac
    double r_star = 0.0; // smallest nonzero singular value of rfac
    Index r_rank = 0;
};

Parts decompose(const PiMatrix& pi, double rank_tol = kDefaultRankTol) {
    const ClassLabel label = classify(pi);
    if (!label.strict()) {
        throw NotStrictError(label.in_class()
                                 ? "geometry: block22 is singular, set is unbounded"
                                 : "geometry: not in class (" + label.reason + ")");
    }

    Parts parts;
    const Matrix neg22 = detail::symmetrized(-pi.block22());
    Eigen::SelfAdjointEigenSolver<Matrix> esl(neg22);
    const Vector& lam_l = esl.eigenvalues(); // ascending, all positive
    const Index p = pi.p;
    parts.lsv.resize(p);
    parts.lvec.resize(p, p);
    for (Index i = 0; i < p; ++i) {
        // Ascending eigenvalues of -block22 give descending values of lfac.
        parts.lsv(i) = 1.0 / std::sqrt(lam_l(i));
        parts.lvec.col(i) = esl.eigenvectors().col(i);
    }
    parts.l_min = 1.0 / std::sqrt(lam_l(p - 1));
    parts.lfac = parts.lvec * parts.lsv.asDiagonal() * parts.lvec.transpose();
    parts.x0 = esl.eigenvectors() *
               lam_l.cwiseInverse().asDiagonal() *
               esl.eigenvectors().transpose() * pi.block21();

    const Matrix sc = schur_complement(pi, rank_tol);
    Eigen::SelfAdjointEigenSolver<Matrix> esr(sc);
    const Vector& lam_r = esr.eigenvalues(); // ascending
    const Index q = pi.q;
    const double lam_max = std::max(lam_r(q - 1), 0.0);
    // Rank cut on the eigenvalues of the Schur complement, not on their
    // square roots, so round-off noise does not leak into sigma_* or into
    // the factor: an eigenvalue that is zero in exact arithmetic comes back
    // as eps * sigma_1(Pi), and keeping its square root in rfac would let
    // constructed affine-hull directions drift out of the true hull. The
    // cut is therefore floored at the scale of the input matrix, and rsv is
    // zeroed below it.
    const double lam_cut = rank_tol * std::max(lam_max, singular_values(pi.mat)(0));
    parts.rsv.resize(q);
    parts.rvec.resize(q, q);
    parts.r_rank = 0;
    for (Index i = 0; i < q; ++i) {
        const double lam = lam_r(q - 1 - i);
        parts.rsv(i) = lam > lam_cut ? std::sqrt(lam) : 0.0;
        parts.rvec.col(i) = esr.eigenvectors().col(q - 1 - i);
        if (lam > lam_cut) {
            parts.r_rank = i + 1;
        }
    }
    parts.rfac = parts.rvec * parts.rsv.asDiagonal() * parts.rvec.transpose();
    parts.r_star = parts.r_rank > 0 ? parts.rsv(parts.r_rank - 1) : 0.0;
    return parts;
}

double radius_from(const Parts& parts, const GaugeSpec& g, Index k) {
    const Vector prod =
        truncate_or_pad(parts.lsv, k).cwiseProduct(truncate_or_pad(parts.rsv, k));
    return gauge_eval(g, prod);
}

} // namespace

Matrix chebyshev_center(const PiMatrix& pi) {
    return decompose(pi).x0;
}

double chebyshev_radius(const PiMatrix& pi, const GaugeSpec& g) {
    const Parts parts = decompose(pi);
    return radius_from(parts, g, std::min(pi.p, pi.q));
}

double diameter(const PiMatrix& pi, const GaugeSpec& g) {
    return 2.0 * chebyshev_radius(pi, g);
}

double inner_radius(const PiMatrix& pi, const GaugeSpec& g) {
    const Parts parts = decompose(pi);
    const Index k = std::min(pi.p, pi.q);
    return parts.r_star * parts.l_min * gauge_e1(g, k);
}

SetSummary summarize(const PiMatrix& pi, const GaugeSpec& g) {
    const Parts parts = decompose(pi);
    SetSummary s;
    s.center = parts.x0;
    s.k = std::min(pi.p, pi.q);
    s.radius = radius_from(parts, g, s.k);
    s.diameter = 2.0 * s.radius;
    s.inner_radius = parts.r_star * parts.l_min * gauge_e1(g, s.k);
    s.gauge = g;
    return s;
}

std::vector<SetSummary> summarize_all(const PiMatrix& pi, const std::vector<GaugeSpec>& gauges) {
    const Parts parts = decompose(pi);
    const Index k = std::min(pi.p, pi.q);
    std::vector<SetSummary> out;
    out.reserve(gauges.size());
    for (const GaugeSpec& g : gauges) {
        SetSummary s;
        s.center = parts.x0;
        s.k = k;
        s.radius = radius_from(parts, g, k);
        s.diameter = 2.0 * s.radius;
        s.inner_radius = parts.r_star * parts.l_min * gauge_e1(g, k);
        s.gauge = g;
        out.push_back(std::move(s));
    }
    return out;
}

SetSummary transformed_summary(const PiMatrix& pi, const TransformSpec& t, const GaugeSpec& g) {
    if (t.theta_l.cols() != pi.p || t.theta_r.rows() != pi.q) {
        throw InputError("transformed_summary: multiplier shapes incompatible with the set");
    }
    detail::require_finite(t.theta_l, "transformed_summary");
    detail::require_finite(t.theta_r, "transformed_summary");

    const Parts parts = decompose(pi);
    const Matrix left = t.theta_l * parts.lfac;   // l x p
    const Matrix right = parts.rfac * t.theta_r;  // q x r

    SetSummary s;
    s.center = t.theta_l * parts.x0 * t.theta_r;
    s.k = std::min(t.theta_l.rows(), t.theta_r.cols());
    const Vector prod = truncate_or_pad(singular_values(left), s.k)
                            .cwiseProduct(truncate_or_pad(singular_values(right), s.k));
    s.radius = gauge_eval(g, prod);
    s.diameter = 2.0 * s.radius;
    s.inner_radius = smallest_nonzero_singular_value(left) *
                     smallest_nonzero_singular_value(right) * gauge_e1(g, s.k);
    s.gauge = g;
    return s;
}

Matrix extremal_member(const PiMatrix& pi, const GaugeSpec& g) {
    (void)g; // the same construction is extremal for every gauge
    const Parts parts = decompose(pi);
    const Index k = std::min(pi.p, pi.q);
    Matrix sigma_s = Matrix::Zero(pi.p, pi.q);
    sigma_s.topLeftCorner(k, k) = Matrix::Identity(k, k);
    const Matrix s = parts.lvec * sigma_s * parts.rvec.transpose();
    return parts.x0 + parts.lfac * s * parts.rfac;
}

Matrix inner_boundary_member(const PiMatrix& pi, const GaugeSpec& g, double inflation) {
    const Parts parts = decompose(pi);
    if (parts.r_star == 0.0 || parts.l_min == 0.0) {
        throw ZeroSetError("inner_boundary_member: inner radius is zero");
    }
    const Index k = std::min(pi.p, pi.q);
    const double rho = parts.r_star * parts.l_min * gauge_e1(g, k);
    // Tight direction: the singular vectors attaining l_min and r_star.
    const Vector v_l = parts.lvec.col(pi.p - 1);
    const Vector v_r = parts.rvec.col(parts.r_rank - 1);
    const Matrix raw = parts.lfac * (v_l * v_r.transpose()) * parts.rfac;
    const double raw_norm = matrix_norm(g, raw);
    return parts.x0 + (1.0 + inflation) * rho * (raw / raw_norm);
}

std::pair<double, double> product_norm_bound(const Matrix& l, const Matrix& s, const Matrix& r,
                                             const GaugeSpec& g) {
    if (l.cols() != s.rows() || s.cols() != r.rows()) {
        throw InputError("product_norm_bound: inner dimensions do not match");
    }
    const Matrix lsr = l * s * r;
    const Index k = std::min(lsr.rows(), lsr.cols());
    const double lhs = gauge_eval(g, truncate_or_pad(singular_values(lsr), k));
    const Vector combined = truncate_or_pad(singular_values(l), k)
                                .cwiseProduct(truncate_or_pad(singular_values(s), k))
                                .cwiseProduct(truncate_or_pad(singular_values(r), k));
    const double rhs = gauge_eval(g, combined);
    return {lhs, rhs};
}

} // namespace qmi
