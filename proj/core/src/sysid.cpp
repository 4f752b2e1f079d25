#include "qmi/sysid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "qmi/random.hpp"

namespace qmi {

Matrix ArxCoefficients::stacked() const {
    Matrix out(P.rows(), P.cols() + Q.cols());
    out << P, Q;
    return out;
}

Matrix ArxDataset::regressor() const {
    Matrix r(s(), cols());
    r.topRows(y_minus.rows()) = y_minus;
    r.bottomRows(u_minus.rows()) = u_minus;
    return r;
}

NoiseModel::NoiseModel(PiMatrix phi_) : phi(std::move(phi_)) {
    const ClassLabel label = classify(phi);
    if (!label.strict()) {
        throw InvalidNoiseModel(label.in_class()
                                    ? "noise model: block22 must be negative definite"
                                    : "noise model: " + label.reason);
    }
}

Matrix simulate_arx(const ArxCoefficients& coeffs, const Matrix& u, const Matrix& y_init,
                    const Matrix& w, Index horizon) {
    const Index lag_out = coeffs.output_order;
    const Index lag_in = coeffs.input_order;
    const Index p = coeffs.outputs();
    const Index m = coeffs.inputs();
    if (lag_out < 1 || lag_in < 0 || lag_in > lag_out) {
        throw InputError("simulate_arx: orders must satisfy 1 <= L and 0 <= M <= L");
    }
    if (horizon < lag_out) {
        throw InputError("simulate_arx: horizon must be at least the output order");
    }
    if (coeffs.P.cols() != lag_out * p || coeffs.Q.cols() != (lag_in + 1) * m) {
        throw InputError("simulate_arx: coefficient block shapes are inconsistent");
    }
    if (y_init.rows() != p || y_init.cols() != lag_out) {
        throw InputError("simulate_arx: initial outputs must be p x L");
    }
    const Index steps = horizon - lag_out + 1;
    if (u.rows() != m || u.cols() < horizon + lag_in - lag_out + 1) {
        throw InputError("simulate_arx: input must be m x (T+M-L+1) at least");
    }
    if (w.rows() != p || w.cols() != steps) {
        throw InputError("simulate_arx: noise must be p x (T-L+1)");
    }

    Matrix y(p, horizon + 1);
    y.leftCols(lag_out) = y_init;
    for (Index t = 0; t < steps; ++t) {
        Vector next = w.col(t);
        for (Index i = 0; i < lag_out; ++i) {
            next += coeffs.p_block(i) * y.col(t + i);
        }
        for (Index j = 0; j <= lag_in; ++j) {
            next += coeffs.q_block(j) * u.col(t + j);
        }
        y.col(t + lag_out) = next;
    }
    return y;
}

ArxDataset build_data_matrices(const Matrix& u, const Matrix& y, Index output_order,
                               Index input_order) {
    if (output_order < 1 || input_order < 0 || input_order > output_order) {
        throw InputError("build_data_matrices: orders must satisfy 1 <= L and 0 <= M <= L");
    }
    const Index p = y.rows();
    const Index m = u.rows();
    const Index horizon = y.cols() - 1;
    if (horizon < output_order) {
        throw InputError("build_data_matrices: need outputs up to at least t = L");
    }
    const Index steps = horizon - output_order + 1;
    if (u.cols() < horizon + input_order - output_order + 1) {
        throw InputError("build_data_matrices: insufficient input samples");
    }

    ArxDataset data;
    data.output_order = output_order;
    data.input_order = input_order;
    data.horizon = horizon;
    data.p = p;
    data.m = m;
    data.y_minus.resize(output_order * p, steps);
    data.u_minus.resize((input_order + 1) * m, steps);
    data.y_plus.resize(p, steps);
    for (Index t = 0; t < steps; ++t) {
        for (Index i = 0; i < output_order; ++i) {
            data.y_minus.block(i * p, t, p, 1) = y.col(t + i);
        }
        for (Index j = 0; j <= input_order; ++j) {
            data.u_minus.block(j * m, t, m, 1) = u.col(t + j);
        }
        data.y_plus.col(t) = y.col(t + output_order);
    }
    return data;
}

NoiseModel energy_ball_noise_model(const Vector& center, double bound_sq, Index p, Index cols) {
    if (bound_sq < 0) {
        throw InputError("energy_ball_noise_model: bound must be nonnegative");
    }
    Vector c;
    if (center.size() == p) {
        c = center;
    } else if (center.size() == 1) {
        c = Vector::Constant(p, center(0));
    } else {
        throw InputError("energy_ball_noise_model: center must have size p or 1");
    }
    Matrix phi = Matrix::Zero(p + cols, p + cols);
    phi.topLeftCorner(p, p) =
        bound_sq * Matrix::Identity(p, p) - static_cast<double>(cols) * c * c.transpose();
    phi.topRightCorner(p, cols) = c * Eigen::RowVectorXd::Ones(cols);
    phi.bottomLeftCorner(cols, p) = phi.topRightCorner(p, cols).transpose();
    phi.bottomRightCorner(cols, cols) = -Matrix::Identity(cols, cols);
    try {
        return NoiseModel(PiMatrix(p, cols, std::move(phi)));
    } catch (const InvalidNoiseModel&) {
        throw;
    } catch (const Error& e) {
        throw InvalidNoiseModel(std::string("energy_ball_noise_model: ") + e.what());
    }
}

PiMatrix build_n_matrix(const ArxDataset& data, const NoiseModel& noise) {
    const Index p = data.p;
    const Index s = data.s();
    const Index steps = data.cols();
    if (noise.phi.q != p || noise.phi.p != steps) {
        throw InputError("build_n_matrix: noise model blocks must be p and T-L+1");
    }
    Matrix j = Matrix::Zero(p + s, p + steps);
    j.topLeftCorner(p, p) = Matrix::Identity(p, p);
    j.topRightCorner(p, steps) = data.y_plus;
    j.block(p, p, data.y_minus.rows(), steps) = -data.y_minus;
    j.block(p + data.y_minus.rows(), p, data.u_minus.rows(), steps) = -data.u_minus;
    const Matrix n = detail::symmetrized(j * noise.phi.mat * j.transpose());
    return PiMatrix(p, s, n);
}

namespace {

Matrix center_direct(const PiMatrix& n) {
    // -N12 * N22^{-1} through an SPD solve of -N22.
    const Matrix neg22 = detail::symmetrized(-n.block22());
    return neg22.ldlt().solve(n.block21()).transpose();
}

Matrix center_expanded(const ArxDataset& data, const NoiseModel& noise) {
    const Matrix r = data.regressor();
    const Matrix phi12 = noise.phi.block12();
    const Matrix phi22 = noise.phi.block22();
    const Matrix lhs = (phi12 + data.y_plus * phi22) * r.transpose();
    const Matrix gram = detail::symmetrized(-(r * phi22 * r.transpose()));
    return -gram.ldlt().solve(lhs.transpose()).transpose();
}

ArxCoefficients split_estimate(const Matrix& stacked, const ArxDataset& data) {
    ArxCoefficients est;
    est.output_order = data.output_order;
    est.input_order = data.input_order;
    est.P = stacked.leftCols(data.output_order * data.p);
    est.Q = stacked.rightCols((data.input_order + 1) * data.m);
    return est;
}

} // namespace

IdentificationReport identify(const ArxDataset& data, const NoiseModel& noise,
                              const std::vector<GaugeSpec>& gauges, double tol) {
    IdentificationReport report;
    report.n = build_n_matrix(data, noise);

    const Index s = data.s();
    report.bounded = numeric_rank(data.regressor().transpose()) == s;
    if (!report.bounded) {
        return report;
    }

    const Matrix est1 = center_direct(report.n);
    const Matrix est2 = center_expanded(data, noise);
    const double disagreement = (est1 - est2).norm() / std::max(1.0, est1.norm());
    if (disagreement > 1e-8) {
        std::ostringstream diag;
        diag << "identify: center routes disagree by " << disagreement
             << " (sigma_s(regressor) = "
             << singular_values(data.regressor()).minCoeff()
             << ", sigma_1(N) = " << singular_values(report.n.mat)(0) << ")";
        throw Error(diag.str());
    }
    report.estimate = split_estimate(est1, data);

    const Matrix sc = schur_complement(report.n);
    const double sc_top = singular_values(sc)(0);
    report.singleton = sc_top <= tol * std::max(singular_values(report.n.mat)(0), 1.0);

    const auto summaries = summarize_all(report.n, gauges);
    for (const SetSummary& summary : summaries) {
        const std::string id = summary.gauge.id();
        report.radii[id] = summary.radius;
        report.inner_radii[id] = summary.inner_radius;
        report.snr_bounds[id] = snr_radius_bound(data, noise, summary.gauge);
    }
    report.spectral_bound = spectral_radius_bound(report.n);
    report.snr_inner_bound_value = snr_inner_bound(data, noise);
    return report;
}

ArxCoefficients gls_estimate(const ArxDataset& data, const NoiseModel& noise) {
    const Matrix r = data.regressor();
    if (numeric_rank(r.transpose()) != data.s()) {
        throw InputError("gls_estimate: regressor is rank deficient");
    }
    const Matrix half = psd_sqrt(detail::symmetrized(-noise.phi.block22()));
    const Matrix a = r * half;
    const Matrix phi22 = noise.phi.block22();
    const Matrix bias = phi22.ldlt().solve(noise.phi.block21()).transpose(); // Phi12 * Phi22^{-1}
    const Matrix b = (data.y_plus + bias) * half;
    const Matrix gram = detail::symmetrized(a * a.transpose());
    const Matrix solution = gram.ldlt().solve(a * b.transpose()).transpose();
    return split_estimate(solution, data);
}

PiMatrix apply_prior_knowledge(const PiMatrix& n, const PriorKnowledge& pk) {
    const Index p = n.q;
    const Index s = n.p;
    if (pk.omega1.rows() != p || pk.omega1.cols() != s || pk.omega2.cols() != s) {
        throw InputError("apply_prior_knowledge: omega shapes must be p x s and h x s");
    }
    const Index h = pk.omega2.rows();
    Matrix j = Matrix::Zero(p + h, p + s);
    j.topLeftCorner(p, p) = Matrix::Identity(p, p);
    j.topRightCorner(p, s) = pk.omega1;
    j.bottomRightCorner(h, s) = pk.omega2;
    return PiMatrix(p, h, detail::symmetrized(j * n.mat * j.transpose()));
}

double spectral_radius_bound(const PiMatrix& n) {
    const Matrix neg22 = detail::symmetrized(-n.block22());
    Eigen::SelfAdjointEigenSolver<Matrix> es22(neg22);
    if (es22.eigenvalues()(0) <= 0) {
        throw NotStrictError("spectral_radius_bound: block22 must be negative definite");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> essc(schur_complement(n));
    const double top = std::max(essc.eigenvalues()(essc.eigenvalues().size() - 1), 0.0);
    return std::sqrt(top / es22.eigenvalues()(0));
}

namespace {

double noise_schur_top(const NoiseModel& noise) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(schur_complement(noise.phi));
    return std::max(es.eigenvalues()(es.eigenvalues().size() - 1), 0.0);
}

} // namespace

double snr_radius_bound(const ArxDataset& data, const NoiseModel& noise, const GaugeSpec& g) {
    const Matrix r = data.regressor();
    if (numeric_rank(r.transpose()) != data.s()) {
        throw InputError("snr_radius_bound: regressor is rank deficient");
    }
    const double sigma_s = singular_values(r).minCoeff();
    return std::sqrt(noise_schur_top(noise)) / sigma_s * gauge_ones(g, data.p);
}

double snr_inner_bound(const ArxDataset& data, const NoiseModel& noise) {
    const Matrix r = data.regressor();
    if (numeric_rank(r.transpose()) != data.s()) {
        throw InputError("snr_inner_bound: regressor is rank deficient");
    }
    return std::sqrt(noise_schur_top(noise)) / singular_values(r)(0);
}

double required_min_singular_value(const NoiseModel& noise, const GaugeSpec& g, double rho,
                                   Index p) {
    if (rho <= 0) {
        throw InputError("required_min_singular_value: rho must be positive");
    }
    return std::sqrt(noise_schur_top(noise)) * gauge_ones(g, p) / rho;
}

namespace {

// ZOH discretization through the augmented exponential
// exp([A B; 0 0] dt) = [Ad Bd; 0 I]; valid for singular A as well.
std::pair<Matrix, Matrix> zoh(const Matrix& a, const Matrix& b, double dt) {
    const Index n = a.rows();
    const Index m = b.cols();
    Matrix aug = Matrix::Zero(n + m, n + m);
    aug.topLeftCorner(n, n) = a;
    aug.topRightCorner(n, m) = b;
    const Matrix e = (aug * dt).exp();
    return {e.topLeftCorner(n, n), e.topRightCorner(n, m)};
}

} // namespace

ArxCoefficients msd_discretize(double mass, double damping, double stiffness, double dt) {
    if (mass <= 0 || dt <= 0) {
        throw InputError("msd_discretize: mass and dt must be positive");
    }
    Matrix a(2, 2);
    a << 0.0, 1.0, -stiffness / mass, -damping / mass;
    Matrix b(2, 1);
    b << 0.0, 1.0 / mass;
    const auto [ad, bd] = zoh(a, b, dt);
    Eigen::RowVector2d c(1.0, 0.0);

    const double p1 = ad.trace();
    const double p0 = -ad.determinant();
    const double q1 = (c * bd)(0);
    const double q0 = (c * ad * bd)(0) - p1 * q1;

    ArxCoefficients coeffs;
    coeffs.output_order = 2;
    coeffs.input_order = 1;
    coeffs.P.resize(1, 2);
    coeffs.P << p0, p1;
    coeffs.Q.resize(1, 2);
    coeffs.Q << q0, q1;
    return coeffs;
}

ArxCoefficients rc_discretize(const std::array<double, 4>& resistances,
                              const std::array<double, 3>& capacitances, double dt) {
    for (double r : resistances) {
        if (r <= 0) {
            throw InputError("rc_discretize: resistances must be positive");
        }
    }
    for (double c : capacitances) {
        if (c <= 0) {
            throw InputError("rc_discretize: capacitances must be positive");
        }
    }
    if (dt <= 0) {
        throw InputError("rc_discretize: dt must be positive");
    }
    const double r1 = resistances[0], r2 = resistances[1], r3 = resistances[2],
                 r4 = resistances[3];
    const double c1 = capacitances[0], c2 = capacitances[1], c3 = capacitances[2];

    // Ladder: u1 - R1 - (C1) - R2 - (C2) - R3 - (C3) - R4 - u2, states are
    // the capacitor voltages.
    Matrix a(3, 3);
    a << -(1.0 / r1 + 1.0 / r2) / c1, 1.0 / (r2 * c1), 0.0,
        1.0 / (r2 * c2), -(1.0 / r2 + 1.0 / r3) / c2, 1.0 / (r3 * c2),
        0.0, 1.0 / (r3 * c3), -(1.0 / r3 + 1.0 / r4) / c3;
    Matrix b = Matrix::Zero(3, 2);
    b(0, 0) = 1.0 / (r1 * c1);
    b(2, 1) = 1.0 / (r4 * c3);
    const auto [ad, bd] = zoh(a, b, dt);

    ArxCoefficients coeffs;
    coeffs.output_order = 1;
    coeffs.input_order = 0;
    coeffs.P = ad;
    coeffs.Q = bd;
    return coeffs;
}

NoiseModel msd_noise_model(const MsdScenario& scenario) {
    const Index cols = scenario.horizon - 2 + 1;
    return energy_ball_noise_model(Vector::Constant(1, scenario.noise_center),
                                   scenario.noise_bound_sq, 1, cols);
}

NoiseModel rc_noise_model(const RcScenario& scenario) {
    const Index cols = scenario.horizon; // L = 1
    const double bound_sq = scenario.noise_sigma_max * scenario.noise_sigma_max;
    return energy_ball_noise_model(Vector::Zero(3), bound_sq, 3, cols);
}

SimulatedRun run_msd(const MsdScenario& scenario, std::uint64_t seed,
                     const std::optional<Matrix>& input_override,
                     const std::optional<Matrix>& noise_override) {
    SimulatedRun run;
    run.truth = msd_discretize(scenario.mass, scenario.damping, scenario.stiffness, scenario.dt);
    const Index horizon = scenario.horizon;
    const Index n_inputs = horizon + 1 - 2 + 1; // T+M-L+1
    const Index steps = horizon - 2 + 1;

    if (input_override) {
        run.u = *input_override;
    } else {
        // The default experiment input: 1, 0, -1, 0, 1, 0, -1, ...
        run.u.resize(1, n_inputs);
        const double pattern[4] = {1.0, 0.0, -1.0, 0.0};
        for (Index t = 0; t < n_inputs; ++t) {
            run.u(0, t) = pattern[t % 4];
        }
    }

    if (noise_override) {
        run.w = *noise_override;
    } else {
        rnd::Engine rng(seed);
        Matrix v = rnd::uniform(rng, 1, steps);
        const double norm = v.norm();
        run.w = Matrix::Constant(1, steps, scenario.noise_center);
        if (norm > 0 && scenario.noise_bound_sq > 0) {
            run.w += v * (std::sqrt(scenario.noise_bound_sq) / norm);
        }
    }

    Matrix y_init(1, 2);
    y_init << 0.0, 1.0;
    run.y = simulate_arx(run.truth, run.u, y_init, run.w, horizon);
    return run;
}

SimulatedRun run_rc(const RcScenario& scenario, std::uint64_t seed, double target_min_input_sv) {
    SimulatedRun run;
    run.truth = rc_discretize(scenario.resistances, scenario.capacitances, scenario.dt);
    const Index horizon = scenario.horizon;
    rnd::Engine rng(seed);

    run.u = rnd::uniform(rng, 2, horizon); // L = 1, M = 0: samples u(0..T-1)
    if (target_min_input_sv > 0) {
        const double sigma_min = singular_values(run.u).minCoeff();
        if (sigma_min <= 0) {
            throw Error("run_rc: degenerate random input draw");
        }
        run.u *= target_min_input_sv / sigma_min;
    }

    Matrix w_raw = rnd::uniform(rng, 3, horizon);
    const double sigma_top = singular_values(w_raw)(0);
    run.w = w_raw * (scenario.noise_sigma_max / sigma_top);

    const Matrix y_init = Matrix::Zero(3, 1);
    run.y = simulate_arx(run.truth, run.u, y_init, run.w, horizon);
    return run;
}

std::vector<SnrSweepRow> sweep_snr(const RcScenario& scenario, const std::vector<double>& snr_values,
                                   Index trials, std::uint64_t base_seed,
                                   const std::vector<GaugeSpec>& gauges) {
    if (trials < 1) {
        throw InputError("sweep_snr: trials must be positive");
    }
    const NoiseModel noise = rc_noise_model(scenario);
    std::vector<SnrSweepRow> rows;
    rows.reserve(snr_values.size() * gauges.size());

    for (std::size_t point = 0; point < snr_values.size(); ++point) {
        const double snr = snr_values[point];
        const double input_target = snr * scenario.noise_sigma_max;
        std::map<std::string, std::vector<double>> radii;
        std::map<std::string, std::vector<double>> inners;
        std::map<std::string, Index> violations;

        for (Index trial = 0; trial < trials; ++trial) {
            const std::uint64_t seed =
                base_seed + static_cast<std::uint64_t>(point) * static_cast<std::uint64_t>(trials) +
                static_cast<std::uint64_t>(trial);
            const SimulatedRun run = run_rc(scenario, seed, input_target);
            const ArxDataset data = build_data_matrices(run.u, run.y, 1, 0);
            const IdentificationReport report = identify(data, noise, gauges);
            if (!report.bounded) {
                throw Error("sweep_snr: rank-deficient trial at snr " + std::to_string(snr));
            }
            for (const GaugeSpec& g : gauges) {
                const std::string id = g.id();
                radii[id].push_back(report.radii.at(id));
                inners[id].push_back(report.inner_radii.at(id));
                if (report.radii.at(id) > report.snr_bounds.at(id) + 1e-9) {
                    ++violations[id];
                }
            }
        }

        for (const GaugeSpec& g : gauges) {
            const std::string id = g.id();
            const auto& rs = radii[id];
            const auto& is = inners[id];
            auto mean = [](const std::vector<double>& xs) {
                double sum = 0.0;
                for (double x : xs) {
                    sum += x;
                }
                return sum / static_cast<double>(xs.size());
            };
            auto stddev = [](const std::vector<double>& xs, double mu) {
                double sum = 0.0;
                for (double x : xs) {
                    sum += (x - mu) * (x - mu);
                }
                return std::sqrt(sum / static_cast<double>(xs.size()));
            };
            SnrSweepRow row;
            row.snr = snr;
            row.gauge = id;
            row.mean_radius = mean(rs);
            row.std_radius = stddev(rs, row.mean_radius);
            row.mean_inner_radius = mean(is);
            row.std_inner_radius = stddev(is, row.mean_inner_radius);
            row.bound_violations = violations[id];
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace qmi
