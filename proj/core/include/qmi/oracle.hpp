#pragma once

#include <cstdint>
#include <string>

#include "qmi/geometry.hpp"

namespace qmi {

/// Result of one brute-force check of a closed form. `empirical` is always
/// produced independently of the formula under test, except that the
/// extremal constructions are re-admitted through the membership test
/// before they are used.
struct OracleReport {
    std::string target;
    double closed_form = 0.0;
    double empirical = 0.0;
    Index n_samples = 0;
    std::uint64_t seed = 0;
    bool confirmed = false;
    double gap = 0.0; // positive when the claim is violated
    std::string note;
};

/// Default absolute slack on normalized problems.
inline constexpr double kOracleSlack = 1e-9;

/// Max distance from the center over boundary samples plus the extremal
/// member. Confirmed iff the empirical value stays below the closed form
/// (upper bound) and reaches 99.9% of it (tightness).
OracleReport empirical_radius(const PiMatrix& pi, const GaugeSpec& g, Index n, std::uint64_t seed,
                              double slack = kOracleSlack);

/// Max pairwise distance over samples plus the antipodal extremal pair.
OracleReport empirical_diameter(const PiMatrix& pi, const GaugeSpec& g, Index n,
                                std::uint64_t seed, double slack = kOracleSlack);

/// Perturbs the center and verifies no perturbation achieves a smaller
/// worst-case distance than the closed-form radius.
OracleReport center_optimality_probe(const PiMatrix& pi, const GaugeSpec& g, Index n_perturb,
                                     double magnitude, std::uint64_t seed,
                                     double slack = kOracleSlack);

/// Random inner-ball boundary points must be members; the tight-direction
/// point inflated by 1e-3 must not be. Vacuous (with a note) when the
/// inner radius is zero.
OracleReport inner_ball_sweep(const PiMatrix& pi, const GaugeSpec& g, Index n, std::uint64_t seed,
                              double slack = kOracleSlack);

/// Random product triples: the gauge of the product's singular values never
/// exceeds the gauge of the Hadamard product of the factors' singular
/// values, and the weak-majorization chain behind it holds.
OracleReport majorization_suite(Index n_trials, Index max_dim, std::uint64_t seed,
                                double slack = 1e-10);

/// Differences of contractions are twice a contraction, and every matrix of
/// spectral norm at most 2 splits into two contraction halves.
OracleReport minkowski_suite(Index n_trials, Index p, Index q, std::uint64_t seed,
                             double slack = 1e-12);

} // namespace qmi
