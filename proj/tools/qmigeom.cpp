#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qmi/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCrash = 1;
constexpr int kExitValidation = 2;
constexpr int kExitMathPrecondition = 3;
constexpr int kExitOracleViolation = 4;

double env_tolerance() {
    if (const char* raw = std::getenv("QMI_GEOM_TOL")) {
        try {
            const double tol = std::stod(raw);
            if (tol > 0) {
                return tol;
            }
        } catch (const std::logic_error&) {
        }
        throw qmi::InputError("QMI_GEOM_TOL must be a positive number");
    }
    return qmi::kDefaultPsdTol;
}

std::vector<qmi::GaugeSpec> parse_gauges(const std::string& list) {
    std::vector<qmi::GaugeSpec> gauges;
    std::istringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        // weighted:<w1,w2,...> embeds commas; glue the tail back on.
        if (item.rfind("weighted:", 0) == 0) {
            std::string rest;
            std::getline(in, rest);
            gauges.push_back(qmi::GaugeSpec::parse(item + (rest.empty() ? "" : "," + rest)));
            break;
        }
        gauges.push_back(qmi::GaugeSpec::parse(item));
    }
    if (gauges.empty()) {
        throw qmi::InputError("gauge list is empty");
    }
    return gauges;
}

qmi::Matrix parse_row_values(const std::string& list) {
    std::vector<double> values;
    std::istringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        values.push_back(std::stod(item));
    }
    qmi::Matrix m(1, static_cast<qmi::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(0, static_cast<qmi::Index>(i)) = values[i];
    }
    return m;
}

void emit(const std::string& out_path, const std::string& contents) {
    if (out_path.empty() || out_path == "-") {
        std::cout << contents;
        if (!contents.empty() && contents.back() != '\n') {
            std::cout << '\n';
        }
    } else {
        qmi::io::write_file(out_path, contents);
    }
}

struct AnalyzeOptions {
    std::string pi_path;
    std::string transform_path;
    std::string gauges = "frobenius,spectral,nuclear";
    bool verify = false;
    qmi::Index samples = 2000;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_analyze(const AnalyzeOptions& opt) {
    const double tol = env_tolerance();
    const qmi::PiMatrix pi =
        qmi::io::pi_from_json(nlohmann::json::parse(qmi::io::read_file(opt.pi_path)));
    const auto gauges = parse_gauges(opt.gauges);

    const qmi::ClassLabel label = qmi::classify(pi, tol);
    if (!label.strict()) {
        std::cerr << "analyze: set is not strictly bounded: "
                  << (label.in_class() ? "block22 is singular" : label.reason) << '\n';
        return kExitMathPrecondition;
    }

    nlohmann::json output;
    output["summaries"] = nlohmann::json::array();
    if (opt.transform_path.empty()) {
        for (const auto& summary : qmi::summarize_all(pi, gauges)) {
            output["summaries"].push_back(qmi::io::summary_to_json(summary));
        }
    } else {
        const qmi::TransformSpec transform = qmi::io::transform_from_json(
            nlohmann::json::parse(qmi::io::read_file(opt.transform_path)));
        for (const auto& g : gauges) {
            output["summaries"].push_back(
                qmi::io::summary_to_json(qmi::transformed_summary(pi, transform, g)));
        }
    }

    bool violated = false;
    if (opt.verify) {
        output["oracles"] = nlohmann::json::array();
        std::uint64_t seed = opt.seed;
        for (const auto& g : gauges) {
            for (const qmi::OracleReport& report :
                 {qmi::empirical_radius(pi, g, opt.samples, seed),
                  qmi::empirical_diameter(pi, g, std::min<qmi::Index>(opt.samples, 512), seed + 1),
                  qmi::center_optimality_probe(pi, g, 32, 0.1, seed + 2),
                  qmi::inner_ball_sweep(pi, g, opt.samples, seed + 3)}) {
                output["oracles"].push_back(qmi::io::oracle_to_json(report));
                violated = violated || !report.confirmed;
            }
            seed += 4;
        }
    }

    emit(opt.out, output.dump(2));
    return violated ? kExitOracleViolation : kExitOk;
}

struct IdentifyOptions {
    std::string data_path;
    std::string noise_path;
    std::string prior_path;
    std::string gauges = "frobenius,spectral,nuclear";
    qmi::Index output_order = 1;
    qmi::Index input_order = 0;
    std::string out;
};

int cmd_identify(const IdentifyOptions& opt) {
    const double tol = env_tolerance();
    std::ifstream csv(opt.data_path);
    if (!csv) {
        throw qmi::InputError("cannot open trajectory: " + opt.data_path);
    }
    const qmi::io::Trajectory trajectory = qmi::io::read_trajectory_csv(csv);
    const qmi::ArxDataset data = qmi::build_data_matrices(trajectory.u, trajectory.y,
                                                          opt.output_order, opt.input_order);

    qmi::io::NoiseSpec spec = opt.noise_path == "noiseless"
                                  ? qmi::io::NoiseSpec(qmi::io::EnergyBallSpec{
                                        qmi::Vector::Zero(data.p), 0.0})
                                  : qmi::io::noise_spec_from_json(
                                        nlohmann::json::parse(qmi::io::read_file(opt.noise_path)));
    const qmi::NoiseModel noise = qmi::io::make_noise_model(spec, data.p, data.cols());
    const auto gauges = parse_gauges(opt.gauges);

    qmi::IdentificationReport report = qmi::identify(data, noise, gauges, tol);
    nlohmann::json output = qmi::io::report_to_json(report);

    if (!opt.prior_path.empty()) {
        const qmi::PriorKnowledge prior = qmi::io::prior_from_json(
            nlohmann::json::parse(qmi::io::read_file(opt.prior_path)));
        const qmi::PiMatrix restricted = qmi::apply_prior_knowledge(report.n, prior);
        nlohmann::json pk;
        pk["n"] = qmi::io::pi_to_json(restricted);
        const qmi::ClassLabel label = qmi::classify(restricted, tol);
        pk["bounded"] = label.strict();
        if (label.strict()) {
            pk["center"] = qmi::io::matrix_to_json(qmi::chebyshev_center(restricted));
            for (const auto& g : qmi::summarize_all(restricted, gauges)) {
                pk["radii"][g.gauge.id()] = g.radius;
                pk["inner_radii"][g.gauge.id()] = g.inner_radius;
            }
        }
        output["prior_restricted"] = std::move(pk);
    }

    emit(opt.out, output.dump(2));
    return report.bounded ? kExitOk : kExitMathPrecondition;
}

struct SimulateOptions {
    std::string scenario;
    std::uint64_t seed = 0;
    std::string out_prefix;
    qmi::Index horizon = 0; // 0 = scenario default
    // msd parameters
    double mass = 2.0, damping = 1.0, stiffness = 3.0, dt = 1.0;
    double noise_center = 0.005, noise_bound_sq = 1e-4;
    std::string input_override, noise_override;
    // rc parameters
    std::vector<double> resistances{7.0, 5.0, 10.0, 15.0};
    std::vector<double> capacitances{0.5, 0.4, 0.6};
    double noise_sigma_max = 1e-3;
};

int cmd_simulate(const SimulateOptions& opt) {
    qmi::SimulatedRun run;
    nlohmann::json noise_json;
    if (opt.scenario == "msd") {
        qmi::MsdScenario scenario;
        scenario.mass = opt.mass;
        scenario.damping = opt.damping;
        scenario.stiffness = opt.stiffness;
        scenario.dt = opt.dt;
        scenario.noise_center = opt.noise_center;
        scenario.noise_bound_sq = opt.noise_bound_sq;
        if (opt.horizon > 0) {
            scenario.horizon = opt.horizon;
        }
        std::optional<qmi::Matrix> input, noise;
        if (!opt.input_override.empty()) {
            input = parse_row_values(opt.input_override);
        }
        if (!opt.noise_override.empty()) {
            noise = parse_row_values(opt.noise_override);
        }
        run = qmi::run_msd(scenario, opt.seed, input, noise);
        noise_json = nlohmann::json{{"type", "energy_ball"},
                                    {"center", scenario.noise_center},
                                    {"bound_sq", scenario.noise_bound_sq}};
    } else if (opt.scenario == "rc") {
        qmi::RcScenario scenario;
        for (int i = 0; i < 4; ++i) {
            scenario.resistances[static_cast<std::size_t>(i)] =
                opt.resistances[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < 3; ++i) {
            scenario.capacitances[static_cast<std::size_t>(i)] =
                opt.capacitances[static_cast<std::size_t>(i)];
        }
        scenario.dt = opt.dt;
        scenario.noise_sigma_max = opt.noise_sigma_max;
        if (opt.horizon > 0) {
            scenario.horizon = opt.horizon;
        }
        run = qmi::run_rc(scenario, opt.seed);
        noise_json = qmi::io::pi_to_json(qmi::rc_noise_model(scenario).phi);
    } else {
        throw qmi::InputError("simulate: scenario must be msd or rc");
    }

    const std::string prefix = opt.out_prefix.empty() ? opt.scenario : opt.out_prefix;
    std::ostringstream csv;
    qmi::io::write_trajectory_csv(csv, {run.u, run.y});
    qmi::io::write_file(prefix + ".csv", csv.str());

    nlohmann::json truth;
    truth["scenario"] = opt.scenario;
    truth["coefficients"] = qmi::io::coefficients_to_json(run.truth);
    truth["noise_values"] = qmi::io::matrix_to_json(run.w);
    truth["seed"] = opt.seed;
    qmi::io::write_file(prefix + ".truth.json", truth.dump(2));
    qmi::io::write_file(prefix + ".noise.json", noise_json.dump(2));

    std::cerr << "wrote " << prefix << ".csv, " << prefix << ".truth.json, " << prefix
              << ".noise.json\n";
    return kExitOk;
}

struct SweepOptions {
    std::string grid = "10:1000:7";
    qmi::Index trials = 200;
    std::uint64_t seed = 0;
    std::string gauges = "frobenius,spectral,nuclear";
    qmi::Index horizon = 0;
    std::string out;
};

int cmd_sweep(const SweepOptions& opt) {
    double lo = 0, hi = 0;
    int points = 0;
    {
        std::istringstream in(opt.grid);
        std::string a, b, c;
        if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c)) {
            throw qmi::InputError("sweep-snr: grid must be min:max:points");
        }
        lo = std::stod(a);
        hi = std::stod(b);
        points = std::stoi(c);
    }
    if (lo <= 0 || hi < lo || points < 1) {
        throw qmi::InputError("sweep-snr: grid must satisfy 0 < min <= max, points >= 1");
    }
    std::vector<double> snrs;
    for (int i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        snrs.push_back(lo * std::pow(hi / lo, f));
    }

    qmi::RcScenario scenario;
    if (opt.horizon > 0) {
        scenario.horizon = opt.horizon;
    }
    const auto gauges = parse_gauges(opt.gauges);
    const auto rows = qmi::sweep_snr(scenario, snrs, opt.trials, opt.seed, gauges);

    std::ostringstream csv;
    csv << "snr,gauge,mean_radius,std_radius,mean_inner_radius,std_inner_radius\n";
    csv.precision(12);
    bool violated = false;
    for (const auto& row : rows) {
        csv << row.snr << ',' << row.gauge << ',' << row.mean_radius << ',' << row.std_radius
            << ',' << row.mean_inner_radius << ',' << row.std_inner_radius << '\n';
        violated = violated || row.bound_violations > 0;
    }
    emit(opt.out, csv.str());
    if (violated) {
        std::cerr << "sweep-snr: a trial exceeded its radius bound\n";
        return kExitOracleViolation;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chebyshev centers, radii and diameters of QMI-induced matrix sets, "
                 "with set-membership ARX identification"};
    app.require_subcommand(1);

    AnalyzeOptions analyze_opt;
    auto* analyze = app.add_subcommand("analyze", "Summarize a QMI-induced set per gauge");
    analyze->add_option("pi", analyze_opt.pi_path, "Partitioned matrix JSON")->required();
    analyze->add_option("--transform", analyze_opt.transform_path,
                        "JSON with left/right multipliers theta_l, theta_r");
    analyze->add_option("--gauges", analyze_opt.gauges, "Comma-separated gauge identifiers");
    analyze->add_flag("--verify", analyze_opt.verify, "Run the brute-force oracles");
    analyze->add_option("--samples", analyze_opt.samples, "Oracle sample count");
    analyze->add_option("--seed", analyze_opt.seed, "Oracle seed");
    analyze->add_option("--out", analyze_opt.out, "Output path (default stdout)");

    IdentifyOptions identify_opt;
    auto* identify = app.add_subcommand("identify", "Set-membership ARX identification");
    identify->add_option("data", identify_opt.data_path, "Trajectory CSV")->required();
    identify->add_option("--noise", identify_opt.noise_path,
                         "Noise model JSON, or the literal 'noiseless'")
        ->required();
    identify->add_option("--prior", identify_opt.prior_path, "Prior knowledge JSON");
    identify->add_option("--gauges", identify_opt.gauges, "Comma-separated gauge identifiers");
    identify->add_option("--output-order", identify_opt.output_order, "Output lag count L");
    identify->add_option("--input-order", identify_opt.input_order, "Largest input lag M");
    identify->add_option("--out", identify_opt.out, "Output path (default stdout)");

    SimulateOptions simulate_opt;
    auto* simulate = app.add_subcommand("simulate", "Generate scenario data (msd or rc)");
    simulate->add_option("scenario", simulate_opt.scenario, "msd or rc")->required();
    simulate->add_option("--seed", simulate_opt.seed, "Noise/input seed");
    simulate->add_option("--out", simulate_opt.out_prefix, "Output file prefix");
    simulate->add_option("--horizon", simulate_opt.horizon, "Experiment length T");
    simulate->add_option("--mass", simulate_opt.mass, "msd: mass");
    simulate->add_option("--damping", simulate_opt.damping, "msd: damping");
    simulate->add_option("--stiffness", simulate_opt.stiffness, "msd: stiffness");
    simulate->add_option("--dt", simulate_opt.dt, "Sample time");
    simulate->add_option("--noise-center", simulate_opt.noise_center, "msd: noise ball center");
    simulate->add_option("--noise-bound-sq", simulate_opt.noise_bound_sq,
                         "msd: squared noise energy bound");
    simulate->add_option("--input-override", simulate_opt.input_override,
                         "msd: explicit input samples u(0),u(1),...");
    simulate->add_option("--noise-override", simulate_opt.noise_override,
                         "msd: explicit noise samples w(0),w(1),...");
    simulate->add_option("--resistances", simulate_opt.resistances, "rc: four resistances")
        ->expected(4);
    simulate->add_option("--capacitances", simulate_opt.capacitances, "rc: three capacitances")
        ->expected(3);
    simulate->add_option("--noise-sigma-max", simulate_opt.noise_sigma_max,
                         "rc: largest allowed noise singular value");

    SweepOptions sweep_opt;
    auto* sweep = app.add_subcommand("sweep-snr", "Radius statistics over an SNR grid (rc)");
    sweep->add_option("--grid", sweep_opt.grid, "min:max:points, log-spaced");
    sweep->add_option("--trials", sweep_opt.trials, "Trials per SNR value");
    sweep->add_option("--seed", sweep_opt.seed, "Base seed");
    sweep->add_option("--gauges", sweep_opt.gauges, "Comma-separated gauge identifiers");
    sweep->add_option("--horizon", sweep_opt.horizon, "Experiment length T");
    sweep->add_option("--out", sweep_opt.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*analyze) {
            return cmd_analyze(analyze_opt);
        }
        if (*identify) {
            return cmd_identify(identify_opt);
        }
        if (*simulate) {
            return cmd_simulate(simulate_opt);
        }
        if (*sweep) {
            return cmd_sweep(sweep_opt);
        }
    } catch (const qmi::NotStrictError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMathPrecondition;
    } catch (const qmi::NotInClassError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMathPrecondition;
    } catch (const qmi::InvalidNoiseModel& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMathPrecondition;
    } catch (const qmi::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCrash;
    }
    return kExitValidation;
}
