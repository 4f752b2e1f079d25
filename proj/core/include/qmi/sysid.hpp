#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmi/geometry.hpp"

namespace qmi {

/// Coefficients of a MIMO ARX model
///   y(t+L) = sum_i P_i y(t+i) + sum_j Q_j u(t+j) + w(t),
/// with P = [P_0 ... P_{L-1}] and Q = [Q_0 ... Q_M]. Causality requires
/// M <= L.
struct ArxCoefficients {
    Matrix P; // p x (L*p)
    Matrix Q; // p x ((M+1)*m)
    Index output_order = 1; // L
    Index input_order = 0;  // M

    Index outputs() const { return P.rows(); }
    Index inputs() const { return input_order >= 0 ? Q.cols() / (input_order + 1) : 0; }
    auto p_block(Index i) const { return P.middleCols(i * outputs(), outputs()); }
    auto q_block(Index j) const { return Q.middleCols(j * inputs(), inputs()); }

    /// [P Q], the stacked coefficient matrix whose transpose lives in the
    /// data-consistency set.
    Matrix stacked() const;
};

/// Windowed data matrices assembled from one input-output trajectory.
/// Columns are indexed by the window start t = 0..T-L.
struct ArxDataset {
    Index output_order = 1; // L
    Index input_order = 0;  // M
    Index horizon = 0;      // T
    Index p = 0;
    Index m = 0;
    Matrix u_minus; // (M+1)m x (T-L+1)
    Matrix y_minus; // Lp x (T-L+1)
    Matrix y_plus;  // p x (T-L+1)

    Index s() const { return output_order * p + (input_order + 1) * m; }
    Index cols() const { return horizon - output_order + 1; }

    /// [Y-; U-], the s x (T-L+1) regressor.
    Matrix regressor() const;
};

/// Energy-bound description of the admissible noise: the transposed noise
/// matrix lies in the set induced by phi. Construction validates strict
/// class membership.
struct NoiseModel {
    PiMatrix phi;

    explicit NoiseModel(PiMatrix phi_);
};

/// Affine prior on the coefficients: [P Q] = H * omega2 + omega1 for some
/// free H.
struct PriorKnowledge {
    Matrix omega1; // p x s
    Matrix omega2; // h x s
};

/// Outcome of one identification run. Radii maps are keyed by gauge
/// identifier strings and empty when the consistent set is unbounded.
struct IdentificationReport {
    PiMatrix n;
    bool bounded = false;
    bool singleton = false;
    ArxCoefficients estimate;
    std::map<std::string, double> radii;
    std::map<std::string, double> inner_radii;
    std::map<std::string, double> snr_bounds;
    double spectral_bound = 0.0;
    double snr_inner_bound_value = 0.0;
};

/// Simulates the ARX recursion over horizon T. u must provide at least
/// T+M-L+1 samples, y_init exactly L, w exactly T-L+1. Returns the full
/// output trajectory y(0..T), initial values included.
Matrix simulate_arx(const ArxCoefficients& coeffs, const Matrix& u, const Matrix& y_init,
                    const Matrix& w, Index horizon);

/// Stacks the trajectory into the windowed data matrices.
ArxDataset build_data_matrices(const Matrix& u, const Matrix& y, Index output_order,
                               Index input_order);

/// Noise model for sum_t (w(t) - center)(w(t) - center)^T <= bound_sq * I:
/// block22 = -I, block12 = center * ones^T, block11 = bound_sq * I -
/// cols * center * center^T.
NoiseModel energy_ball_noise_model(const Vector& center, double bound_sq, Index p, Index cols);

/// The data-consistency matrix: congruence of the noise model by
/// [I Y+; 0 -Y-; 0 -U-]. Partitioned with q = p and inner block s.
PiMatrix build_n_matrix(const ArxDataset& data, const NoiseModel& noise);

/// Full pipeline: boundedness and singleton tests, best worst-case
/// estimate (computed by two algebraic routes and cross-checked), per-gauge
/// Chebyshev and inner radii, the spectral-norm radius identity, and the
/// signal-to-noise bounds.
IdentificationReport identify(const ArxDataset& data, const NoiseModel& noise,
                              const std::vector<GaugeSpec>& gauges,
                              double tol = kDefaultPsdTol);

/// Generalized least-squares solution with the noise-model bias and
/// precision taken into account; coincides with the Chebyshev center.
ArxCoefficients gls_estimate(const ArxDataset& data, const NoiseModel& noise);

/// Restriction of the consistency matrix under an affine coefficient prior.
PiMatrix apply_prior_knowledge(const PiMatrix& n, const PriorKnowledge& pk);

/// sqrt(lambda_max(N|N22) / lambda_min(-N22)); equals the spectral-gauge
/// Chebyshev radius.
double spectral_radius_bound(const PiMatrix& n);

/// Upper bound on the Chebyshev radius:
/// sqrt(sigma_1(Phi|Phi22)) / sigma_s(regressor^T) * g(ones).
/// Valid for unit-precision noise models (block22 = -I), where the
/// regressor's singular values determine those of the consistency matrix.
double snr_radius_bound(const ArxDataset& data, const NoiseModel& noise, const GaugeSpec& g);

/// Upper bound on the inner radius for normalized gauges:
/// sqrt(sigma_1(Phi|Phi22)) / sigma_1(regressor^T). Same unit-precision
/// domain as snr_radius_bound.
double snr_inner_bound(const ArxDataset& data, const NoiseModel& noise);

/// Smallest regressor singular value guaranteeing a Chebyshev radius of at
/// most rho.
double required_min_singular_value(const NoiseModel& noise, const GaugeSpec& g, double rho,
                                   Index p);

/// Zero-order-hold discretization of a mass-spring-damper, reduced to a
/// SISO ARX(2) model through the characteristic polynomial of the discrete
/// state matrix.
ArxCoefficients msd_discretize(double mass, double damping, double stiffness, double dt);

/// Zero-order-hold discretization of a two-source RC ladder with three
/// capacitor voltages as outputs; L = 1, M = 0.
ArxCoefficients rc_discretize(const std::array<double, 4>& resistances,
                              const std::array<double, 3>& capacitances, double dt);

// --- Simulation scenarios -------------------------------------------------

struct MsdScenario {
    double mass = 2.0;
    double damping = 1.0;
    double stiffness = 3.0;
    double dt = 1.0;
    Index horizon = 5;
    double noise_center = 0.005;
    double noise_bound_sq = 1e-4;
};

struct RcScenario {
    std::array<double, 4> resistances{7.0, 5.0, 10.0, 15.0};
    std::array<double, 3> capacitances{0.5, 0.4, 0.6};
    double dt = 1.0;
    Index horizon = 10;
    double noise_sigma_max = 1e-3;
};

struct SimulatedRun {
    Matrix u; // m x (T+M-L+1)
    Matrix y; // p x (T+1)
    Matrix w; // p x (T-L+1)
    ArxCoefficients truth;
};

NoiseModel msd_noise_model(const MsdScenario& scenario);
NoiseModel rc_noise_model(const RcScenario& scenario);

/// Mass-spring-damper experiment: fixed input (1, 0, -1, 0, 1), initial
/// outputs y(0) = 0, y(1) = 1, and a seeded noise draw scaled onto the
/// energy-ball boundary. Explicit overrides replace the defaults.
SimulatedRun run_msd(const MsdScenario& scenario, std::uint64_t seed,
                     const std::optional<Matrix>& input_override = std::nullopt,
                     const std::optional<Matrix>& noise_override = std::nullopt);

/// RC experiment: uniform random inputs and noise from rest, the noise
/// scaled to sigma_1 = noise_sigma_max. When target_min_input_sv > 0 the
/// input is rescaled so the smallest singular value of U- hits it.
SimulatedRun run_rc(const RcScenario& scenario, std::uint64_t seed,
                    double target_min_input_sv = 0.0);

/// Aggregated sweep output for one (snr, gauge) cell.
struct SnrSweepRow {
    double snr = 0.0;
    std::string gauge;
    double mean_radius = 0.0;
    double std_radius = 0.0;
    double mean_inner_radius = 0.0;
    double std_inner_radius = 0.0;
    Index bound_violations = 0; // trials with radius above their Prop-style bound
};

/// Runs `trials` RC identifications per SNR value. Trial seeds are
/// base_seed + point_index * trials + trial_index; aggregation order is
/// fixed by trial index. Standard deviations are population deviations.
std::vector<SnrSweepRow> sweep_snr(const RcScenario& scenario, const std::vector<double>& snr_values,
                                   Index trials, std::uint64_t base_seed,
                                   const std::vector<GaugeSpec>& gauges);

} // namespace qmi
