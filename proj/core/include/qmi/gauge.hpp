#pragma once

#include <limits>
#include <string>

#include "qmi/matcore.hpp"

namespace qmi {

/// Symmetric gauge function: a vector norm invariant under permutations and
/// sign flips. Evaluated on singular values it induces a unitarily
/// invariant matrix norm.
///
/// Supported families:
///  - Schatten-p (p >= 1, p = inf is the max / spectral norm),
///  - Ky Fan-k (sum of the k largest absolute entries),
///  - weighted Ky Fan (nonincreasing nonnegative weights, w1 > 0).
class GaugeSpec {
  public:
    enum class Kind { schatten, ky_fan, weighted };

    static GaugeSpec schatten(double p);
    static GaugeSpec ky_fan(Index k);
    static GaugeSpec weighted(Vector weights);

    static GaugeSpec frobenius() { return schatten(2.0); }
    static GaugeSpec spectral() { return schatten(std::numeric_limits<double>::infinity()); }
    static GaugeSpec nuclear() { return schatten(1.0); }

    Kind kind() const { return kind_; }
    double exponent() const { return p_; }
    Index top_count() const { return k_; }
    const Vector& weights() const { return weights_; }

    /// Identifier accepted on the command line and in JSON reports:
    /// "frobenius", "spectral", "nuclear", "schatten:<p>", "kyfan:<k>",
    /// "weighted:<w1,w2,...>".
    std::string id() const;
    static GaugeSpec parse(const std::string& id);

    bool operator==(const GaugeSpec& other) const;

  private:
    GaugeSpec(Kind kind, double p, Index k, Vector weights)
        : kind_(kind), p_(p), k_(k), weights_(std::move(weights)) {}

    Kind kind_;
    double p_ = 2.0;
    Index k_ = 1;
    Vector weights_;
};

enum class StrictConvexity { yes, no, unknown };

/// g applied to the entrywise absolute values of x, sorted nonincreasing.
double gauge_eval(const GaugeSpec& g, const Vector& x);

/// g of the first standard basis vector of R^n; 1 for every Schatten and
/// Ky Fan gauge, w1 for weighted gauges.
double gauge_e1(const GaugeSpec& g, Index n);

/// g of the all-ones vector of R^n.
double gauge_ones(const GaugeSpec& g, Index n);

/// The induced unitarily invariant norm: g evaluated on singular values.
double matrix_norm(const GaugeSpec& g, const Matrix& m);

/// Whether the induced norm has a strictly convex unit ball. Schatten-p
/// with 1 < p < inf: yes. Schatten-1, Schatten-inf, Ky Fan: no.
/// General weighted gauges are not classified.
StrictConvexity is_essentially_strictly_convex(const GaugeSpec& g);

} // namespace qmi
