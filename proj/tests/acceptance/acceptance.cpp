// Acceptance suite: one checked criterion per function, one PASS/FAIL line
// per criterion on stdout. Run with no arguments for the full suite or with
// a criterion number to run a single one.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "qmi/io.hpp"
#include "qmi/oracle.hpp"

using namespace qmi;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) {
                detail += "; ";
            }
            detail += what;
        }
    }
};

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(6);
    out << x;
    return out.str();
}

// ---- 1. mass-spring-damper golden run ------------------------------------

Outcome criterion_msd_golden() {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    const auto paper = helpers::msd_paper_data();
    const ArxCoefficients truth = msd_discretize(2, 1, 3, 1);
    Matrix y_init(1, 2);
    y_init << 0, 1;
    const Matrix y = simulate_arx(truth, paper.u, y_init, paper.w, 5);
    const ArxDataset data = build_data_matrices(paper.u, y, 2, 1);

    out.require((data.y_minus - paper.y_minus).cwiseAbs().maxCoeff() <= 1e-3,
                "simulated Y- deviates from the printed matrix");
    out.require((data.y_plus - paper.y_plus).cwiseAbs().maxCoeff() <= 1e-3,
                "simulated Y+ deviates from the printed matrix");

    const NoiseModel noise = energy_ball_noise_model(Vector::Constant(1, 0.005), 1e-4, 1, 4);
    const auto report = identify(data, noise, {GaugeSpec::frobenius()});
    out.require(report.bounded, "consistent set is unbounded");

    Matrix printed(1, 4);
    printed << paper.p0, paper.p1, paper.q0, paper.q1;
    const Matrix est = report.estimate.stacked();
    const double center_dev = (est - printed).cwiseAbs().maxCoeff();
    out.require(center_dev <= 1e-3,
                "estimate (" + fmt(est(0, 0)) + ", " + fmt(est(0, 1)) + ", " + fmt(est(0, 2)) +
                    ", " + fmt(est(0, 3)) +
                    ") deviates from the printed values by " + fmt(center_dev) +
                    "; the printed values equal the true parameters, which are not the center of"
                    " the printed data");

    const double radius = report.radii.at("frobenius");
    out.require(std::abs(radius - 0.0458) <= 5e-4,
                "Euclidean radius " + fmt(radius) + " off 0.0458");

    const double elapsed = seconds_since(start);
    out.require(elapsed < 1.0, "runtime " + fmt(elapsed) + " s exceeds 1 s");
    return out;
}

// ---- 2. discretization oracle ---------------------------------------------

Outcome criterion_discretization() {
    Outcome out;
    const ArxCoefficients c = msd_discretize(2, 1, 3, 1);
    out.require(std::abs(c.P(0, 0) - (-0.6065)) <= 1e-3, "P0 mismatch");
    out.require(std::abs(c.P(0, 1) - 0.5659) <= 1e-3, "P1 mismatch");
    out.require(std::abs(c.Q(0, 0) - 0.1583) <= 1e-3, "Q0 mismatch");
    out.require(std::abs(c.Q(0, 1) - 0.1886) <= 1e-3, "Q1 mismatch");
    out.require(std::abs(c.P(0, 0) - (-std::exp(-0.5))) <= 1e-12,
                "P0 violates the exponential determinant identity");
    return out;
}

// ---- 3. ellipsoid analytics ------------------------------------------------

Outcome criterion_ellipsoid() {
    Outcome out;
    const PiMatrix pi = helpers::ellipsoid_pi(3, 2, 1);
    const double radius = chebyshev_radius(pi, GaugeSpec::spectral());
    const double inner = inner_radius(pi, GaugeSpec::spectral());
    out.require(std::abs(radius - 3.0) <= 1e-10, "spectral radius " + fmt(radius) + " != 3");
    out.require(std::abs(inner - 1.0) <= 1e-10, "inner radius " + fmt(inner) + " != 1");
    return out;
}

// ---- shared random instance streams ---------------------------------------

std::vector<PiMatrix> tightness_instances() {
    std::vector<PiMatrix> pis;
    pis.reserve(200);
    for (int i = 0; i < 200; ++i) {
        rnd::Engine rng(20'000 + static_cast<std::uint64_t>(i));
        std::uniform_int_distribution<Index> dim(1, 4);
        const Index deficit = i % 4 == 3 ? 1 : 0;
        pis.push_back(helpers::random_strict_pi(rng, dim(rng), dim(rng), deficit));
    }
    return pis;
}

// ---- 4. radius tightness ----------------------------------------------------

Outcome criterion_radius_tightness() {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    const auto gauges = helpers::all_gauges();
    Index samples_checked = 0;
    for (const PiMatrix& pi : tightness_instances()) {
        const Matrix center = chebyshev_center(pi);
        const Matrix zstar = extremal_member(pi, gauges.front());
        if (!contains(pi, zstar)) {
            out.require(false, "extremal member left the set");
            break;
        }
        std::vector<double> radii;
        for (const GaugeSpec& g : gauges) {
            const double radius = chebyshev_radius(pi, g);
            const double achieved = matrix_norm(g, zstar - center);
            if (std::abs(achieved - radius) > 1e-9 * std::max(1.0, radius)) {
                out.require(false, "extremal distance " + fmt(achieved) + " misses radius " +
                                       fmt(radius) + " (" + g.id() + ")");
            }
            radii.push_back(radius);
        }
        for (const Matrix& z : sample(pi, 50, 77, SampleMode::boundary)) {
            ++samples_checked;
            const Vector sv = singular_values(z - center);
            for (std::size_t gi = 0; gi < gauges.size(); ++gi) {
                if (gauge_eval(gauges[gi], sv) > radii[gi] + 1e-9) {
                    out.require(false, "sampled member exceeded the radius (" +
                                           gauges[gi].id() + ")");
                }
            }
        }
        if (!out.pass) {
            break;
        }
    }
    out.require(samples_checked >= 10'000 || !out.pass,
                "fewer than 10^4 sampled members were checked");
    const double elapsed = seconds_since(start);
    out.require(elapsed < 30.0, "runtime " + fmt(elapsed) + " s exceeds 30 s");
    out.detail += out.detail.empty() ? "" : "; ";
    out.detail += std::to_string(samples_checked) + " samples, " + fmt(elapsed) + " s";
    return out;
}

// ---- 5. inner-ball tightness ------------------------------------------------

Outcome criterion_inner_tightness() {
    Outcome out;
    const auto gauges = helpers::all_gauges();
    int checked = 0;
    for (const PiMatrix& pi : tightness_instances()) {
        for (const GaugeSpec& g : gauges) {
            const OracleReport r = inner_ball_sweep(pi, g, 20, 4242);
            if (!r.confirmed) {
                out.require(false, "inner-ball sweep violated (" + g.id() + "): " + r.note);
                return out;
            }
            ++checked;
        }
    }
    out.detail = std::to_string(checked) + " sweeps confirmed";
    return out;
}

// ---- 6. spectral radius identity ---------------------------------------------

Outcome criterion_spectral_identity() {
    Outcome out;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        rnd::Engine rng(30'000 + static_cast<std::uint64_t>(i));
        helpers::InstanceOptions opt;
        opt.bias = i % 2 == 1;
        opt.general_phi = i % 3 == 2;
        const auto inst = helpers::random_instance(rng, opt);
        const PiMatrix n = build_n_matrix(inst.data, inst.noise);
        const double direct = spectral_radius_bound(n);
        const double via_gauge = chebyshev_radius(n, GaugeSpec::spectral());
        worst = std::max(worst,
                         std::abs(direct - via_gauge) / std::max(1e-300, std::abs(via_gauge)));
    }
    out.require(worst <= 1e-10, "relative gap " + fmt(worst));
    out.detail = "max relative gap " + fmt(worst);
    return out;
}

// ---- 7. least-squares equivalence ---------------------------------------------

Outcome criterion_gls_equivalence() {
    Outcome out;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        rnd::Engine rng(40'000 + static_cast<std::uint64_t>(i));
        helpers::InstanceOptions opt;
        opt.bias = i % 2 == 0; // half the instances carry a bias term
        opt.general_phi = i % 3 != 0;
        const auto inst = helpers::random_instance(rng, opt);
        const auto report = identify(inst.data, inst.noise, {GaugeSpec::frobenius()});
        const ArxCoefficients gls = gls_estimate(inst.data, inst.noise);
        const double gap = (gls.stacked() - report.estimate.stacked()).norm() /
                           std::max(1.0, report.estimate.stacked().norm());
        worst = std::max(worst, gap);
        if (gap > 1e-8) {
            out.require(false, "instance " + std::to_string(i) + " gap " + fmt(gap));
            break;
        }
    }
    out.detail = "max relative gap " + fmt(worst);
    return out;
}

// ---- 8. signal-to-noise bounds -------------------------------------------------

Outcome criterion_snr_bounds() {
    Outcome out;
    const std::vector<GaugeSpec> gauges{GaugeSpec::frobenius(), GaugeSpec::spectral(),
                                        GaugeSpec::nuclear()};
    for (int i = 0; i < 1000 && out.pass; ++i) {
        rnd::Engine rng(50'000 + static_cast<std::uint64_t>(i));
        helpers::InstanceOptions opt;
        opt.bias = i % 4 == 1; // unit precision throughout, the bounds' domain
        const auto inst = helpers::random_instance(rng, opt);
        const PiMatrix n = build_n_matrix(inst.data, inst.noise);
        for (const GaugeSpec& g : gauges) {
            const double radius = chebyshev_radius(n, g);
            const double bound = snr_radius_bound(inst.data, inst.noise, g);
            if (radius > bound + 1e-9) {
                out.require(false, "radius bound violated by " + fmt(radius - bound));
            }
        }
        const double inner = inner_radius(n, GaugeSpec::frobenius());
        const double inner_bound = snr_inner_bound(inst.data, inst.noise);
        if (inner > inner_bound + 1e-9) {
            out.require(false, "inner bound violated by " + fmt(inner - inner_bound));
        }
    }

    // Exact reproduction of the isotropic-ball special case.
    rnd::Engine rng(51'000);
    const auto inst = helpers::random_instance(rng);
    const double eps = 0.02;
    const NoiseModel ball = energy_ball_noise_model(Vector::Zero(inst.data.p), eps * eps,
                                                    inst.data.p, inst.data.cols());
    const double sigma_s = singular_values(inst.data.regressor()).minCoeff();
    const double bound = snr_radius_bound(inst.data, ball, GaugeSpec::spectral());
    out.require(std::abs(bound - eps / sigma_s) <= 1e-14 * std::abs(bound),
                "isotropic special case not reproduced exactly");
    return out;
}

// ---- 9. lemma suites --------------------------------------------------------------

Outcome criterion_lemma_suites() {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    const OracleReport maj = majorization_suite(10'000, 6, 12345);
    out.require(maj.confirmed, "majorization suite violated: gap " + fmt(maj.gap));
    const OracleReport mink = minkowski_suite(10'000, 4, 3, 54321);
    out.require(mink.confirmed, "contraction suite violated: gap " + fmt(mink.gap));
    const double elapsed = seconds_since(start);
    out.require(elapsed < 10.0, "runtime " + fmt(elapsed) + " s exceeds 10 s");
    out.detail = fmt(elapsed) + " s";
    return out;
}

// ---- 10. RC sweep trend -------------------------------------------------------------

Outcome criterion_rc_sweep() {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    const RcScenario scenario;
    std::vector<double> snrs;
    for (int i = 0; i < 7; ++i) {
        snrs.push_back(10.0 * std::pow(100.0, i / 6.0));
    }
    const std::vector<GaugeSpec> gauges{GaugeSpec::frobenius(), GaugeSpec::spectral(),
                                        GaugeSpec::nuclear()};
    const auto rows = sweep_snr(scenario, snrs, 200, 2024, gauges);

    for (const GaugeSpec& g : gauges) {
        std::vector<double> means;
        for (const auto& row : rows) {
            if (row.gauge == g.id()) {
                means.push_back(row.mean_radius);
                if (row.bound_violations > 0) {
                    out.require(false, "radius bound violated in " +
                                           std::to_string(row.bound_violations) + " trials (" +
                                           g.id() + ")");
                }
            }
        }
        for (std::size_t i = 1; i < means.size(); ++i) {
            if (means[i] > means[i - 1]) {
                out.require(false, "mean radius not monotone nonincreasing (" + g.id() + ")");
            }
        }
        // Least-squares slope in log-log coordinates.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(means.size());
        for (std::size_t i = 0; i < means.size(); ++i) {
            const double x = std::log(snrs[i]);
            const double y = std::log(means[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        if (slope < -1.3 || slope > -0.7) {
            out.require(false, "log-log slope " + fmt(slope) + " outside [-1.3, -0.7] (" +
                                   g.id() + ")");
        }
        out.detail += (out.detail.empty() ? "" : ", ") + g.id() + " slope " + fmt(slope);
    }
    const double elapsed = seconds_since(start);
    out.require(elapsed < 300.0, "runtime " + fmt(elapsed) + " s exceeds 5 min");
    out.detail += ", " + fmt(elapsed) + " s";
    return out;
}

// ---- 11. membership soundness --------------------------------------------------------

Outcome criterion_membership() {
    Outcome out;
    int failures = 0;
    for (int i = 0; i < 1000; ++i) {
        rnd::Engine rng(60'000 + static_cast<std::uint64_t>(i));
        helpers::InstanceOptions opt;
        opt.bias = i % 3 == 1;
        opt.general_phi = i % 2 == 1;
        opt.admissible = true;
        const auto inst = helpers::random_instance(rng, opt);
        const auto report = identify(inst.data, inst.noise, {GaugeSpec::frobenius()});
        if (!report.bounded || !contains(report.n, inst.truth.stacked().transpose()) ||
            !contains(report.n, report.estimate.stacked().transpose())) {
            ++failures;
        }
    }
    out.require(failures == 0, std::to_string(failures) + " of 1000 runs failed membership");
    out.detail = "0 failures over 1000 runs";
    return out;
}

struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "mass-spring-damper golden run", criterion_msd_golden},
        {2, "discretization oracle", criterion_discretization},
        {3, "ellipsoid analytics", criterion_ellipsoid},
        {4, "radius tightness on random sets", criterion_radius_tightness},
        {5, "inner-ball tightness on random sets", criterion_inner_tightness},
        {6, "spectral radius identity", criterion_spectral_identity},
        {7, "least-squares equivalence", criterion_gls_equivalence},
        {8, "signal-to-noise bounds", criterion_snr_bounds},
        {9, "lemma suites", criterion_lemma_suites},
        {10, "rc sweep trend", criterion_rc_sweep},
        {11, "membership soundness", criterion_membership},
    };
    return list;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
    }
    bool all_pass = true;
    for (const Criterion& c : criteria()) {
        if (only != 0 && c.id != only) {
            continue;
        }
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name;
        if (!outcome.detail.empty()) {
            std::cout << " [" << outcome.detail << "]";
        }
        std::cout << std::endl;
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
