#pragma once

#include <utility>
#include <vector>

#include "qmi/gauge.hpp"
#include "qmi/qmiset.hpp"

namespace qmi {

/// Closed-form metric summary of a bounded QMI-induced set for one gauge.
/// The diameter is exactly twice the radius; k is the number of singular
/// values entering the radius formula, min(p, q) for plain sets and
/// min(l, r) for transformed sets.
struct SetSummary {
    Matrix center;
    double radius = 0.0;
    double diameter = 0.0;
    double inner_radius = 0.0;
    GaugeSpec gauge = GaugeSpec::frobenius();
    Index k = 0;
};

/// Left/right multipliers applied to every member of the set.
struct TransformSpec {
    Matrix theta_l; // l x p
    Matrix theta_r; // q x r
};

/// The common Chebyshev center -block22^{-1} block21, valid for every
/// matrix norm. Requires a strictly bounded set.
Matrix chebyshev_center(const PiMatrix& pi);

/// Radius of the smallest enclosing ball in the norm induced by g.
double chebyshev_radius(const PiMatrix& pi, const GaugeSpec& g);

/// Largest distance between two members; exactly 2 * chebyshev_radius.
double diameter(const PiMatrix& pi, const GaugeSpec& g);

/// Radius of the largest ball, intersected with the affine hull, that fits
/// inside the set. Rank decisions on the Schur complement are made on its
/// eigenvalues before the square root.
double inner_radius(const PiMatrix& pi, const GaugeSpec& g);

/// Center, radius, diameter and inner radius from one shared
/// eigendecomposition.
SetSummary summarize(const PiMatrix& pi, const GaugeSpec& g);

/// One summary per gauge, all derived from the same eigendecomposition.
std::vector<SetSummary> summarize_all(const PiMatrix& pi, const std::vector<GaugeSpec>& gauges);

/// Summary of { theta_l * Z * theta_r : Z in the set }.
SetSummary transformed_summary(const PiMatrix& pi, const TransformSpec& t, const GaugeSpec& g);

/// A member whose distance to the center equals the Chebyshev radius.
Matrix extremal_member(const PiMatrix& pi, const GaugeSpec& g);

/// Point at distance (1 + inflation) * inner_radius from the center along
/// the tight direction of the inner ball, inside the affine hull. For
/// inflation <= 0 the point is a member; for inflation > 0 it is not.
/// Throws ZeroSetError when the inner radius is zero.
Matrix inner_boundary_member(const PiMatrix& pi, const GaugeSpec& g, double inflation);

/// (g(sigma_[k](L S R)), g(sigma_[k](L) o sigma_[k](S) o sigma_[k](R)))
/// with k = min(rows, cols) of the product; the first never exceeds the
/// second beyond round-off.
std::pair<double, double> product_norm_bound(const Matrix& l, const Matrix& s, const Matrix& r,
                                             const GaugeSpec& g);

} // namespace qmi
