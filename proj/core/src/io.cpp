#include "qmi/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qmi::io {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array()) {
        throw InputError("matrix JSON must be an array of rows");
    }
    const Index rows = static_cast<Index>(j.size());
    if (rows == 0) {
        return Matrix(0, 0);
    }
    const Index cols = static_cast<Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const json& row = j.at(static_cast<std::size_t>(i));
        if (static_cast<Index>(row.size()) != cols) {
            throw InputError("matrix JSON rows have inconsistent lengths");
        }
        for (Index k = 0; k < cols; ++k) {
            m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
        }
    }
    return m;
}

json pi_to_json(const PiMatrix& pi) {
    return json{{"q", pi.q}, {"p", pi.p}, {"matrix", matrix_to_json(pi.mat)}};
}

PiMatrix pi_from_json(const json& j) {
    const Index q = j.at("q").get<Index>();
    const Index p = j.at("p").get<Index>();
    Matrix m = matrix_from_json(j.at("matrix"));
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw InputError("PiMatrix JSON: matrix is not symmetric");
    }
    return PiMatrix(q, p, std::move(m));
}

json summary_to_json(const SetSummary& s) {
    return json{{"center", matrix_to_json(s.center)},
                {"radius", s.radius},
                {"diameter", s.diameter},
                {"inner_radius", s.inner_radius},
                {"gauge", s.gauge.id()},
                {"k", s.k}};
}

SetSummary summary_from_json(const json& j) {
    SetSummary s;
    s.center = matrix_from_json(j.at("center"));
    s.radius = j.at("radius").get<double>();
    s.diameter = j.at("diameter").get<double>();
    s.inner_radius = j.at("inner_radius").get<double>();
    s.gauge = GaugeSpec::parse(j.at("gauge").get<std::string>());
    s.k = j.at("k").get<Index>();
    return s;
}

json oracle_to_json(const OracleReport& r) {
    return json{{"target", r.target},
                {"closed_form", r.closed_form},
                {"empirical", r.empirical},
                {"n_samples", r.n_samples},
                {"seed", r.seed},
                {"verdict", r.confirmed ? "confirmed" : "violated"},
                {"gap", r.gap},
                {"note", r.note}};
}

json transform_to_json(const TransformSpec& t) {
    return json{{"theta_l", matrix_to_json(t.theta_l)}, {"theta_r", matrix_to_json(t.theta_r)}};
}

TransformSpec transform_from_json(const json& j) {
    return TransformSpec{matrix_from_json(j.at("theta_l")), matrix_from_json(j.at("theta_r"))};
}

json prior_to_json(const PriorKnowledge& pk) {
    return json{{"omega1", matrix_to_json(pk.omega1)}, {"omega2", matrix_to_json(pk.omega2)}};
}

PriorKnowledge prior_from_json(const json& j) {
    return PriorKnowledge{matrix_from_json(j.at("omega1")), matrix_from_json(j.at("omega2"))};
}

json coefficients_to_json(const ArxCoefficients& c) {
    return json{{"P", matrix_to_json(c.P)},
                {"Q", matrix_to_json(c.Q)},
                {"output_order", c.output_order},
                {"input_order", c.input_order}};
}

ArxCoefficients coefficients_from_json(const json& j) {
    ArxCoefficients c;
    c.P = matrix_from_json(j.at("P"));
    c.Q = matrix_from_json(j.at("Q"));
    c.output_order = j.at("output_order").get<Index>();
    c.input_order = j.at("input_order").get<Index>();
    return c;
}

json report_to_json(const IdentificationReport& r) {
    json out{{"n", pi_to_json(r.n)},
             {"bounded", r.bounded},
             {"singleton", r.singleton},
             {"radii", r.radii},
             {"inner_radii", r.inner_radii},
             {"snr_bounds", r.snr_bounds}};
    if (r.bounded) {
        out["estimate"] = coefficients_to_json(r.estimate);
        out["spectral_bound"] = r.spectral_bound;
        out["snr_inner_bound"] = r.snr_inner_bound_value;
    }
    return out;
}

NoiseSpec noise_spec_from_json(const json& j) {
    if (j.contains("type")) {
        const std::string type = j.at("type").get<std::string>();
        if (type != "energy_ball") {
            throw InputError("noise JSON: unknown type '" + type + "'");
        }
        EnergyBallSpec spec;
        const json& center = j.at("center");
        if (center.is_number()) {
            spec.center = Vector::Constant(1, center.get<double>());
        } else {
            std::vector<double> values = center.get<std::vector<double>>();
            spec.center = Eigen::Map<Vector>(values.data(), static_cast<Index>(values.size()));
        }
        spec.bound_sq = j.at("bound_sq").get<double>();
        return spec;
    }
    return pi_from_json(j);
}

NoiseModel make_noise_model(const NoiseSpec& spec, Index p, Index cols) {
    if (std::holds_alternative<PiMatrix>(spec)) {
        const PiMatrix& phi = std::get<PiMatrix>(spec);
        if (phi.q != p || phi.p != cols) {
            throw InvalidNoiseModel("noise matrix blocks do not match the data dimensions");
        }
        return NoiseModel(phi);
    }
    const EnergyBallSpec& ball = std::get<EnergyBallSpec>(spec);
    return energy_ball_noise_model(ball.center, ball.bound_sq, p, cols);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
    const Index m = t.u.rows();
    const Index p = t.y.rows();
    out << 't';
    for (Index i = 1; i <= m; ++i) {
        out << ",u" << i;
    }
    for (Index i = 1; i <= p; ++i) {
        out << ",y" << i;
    }
    out << '\n';
    out << std::setprecision(17);
    for (Index time = 0; time < t.y.cols(); ++time) {
        out << time;
        for (Index i = 0; i < m; ++i) {
            out << ',';
            if (time < t.u.cols()) {
                out << t.u(i, time);
            }
        }
        for (Index i = 0; i < p; ++i) {
            out << ',' << t.y(i, time);
        }
        out << '\n';
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

} // namespace

Trajectory read_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError("trajectory CSV: empty stream");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const auto header = split_csv_line(line);
    if (header.empty() || header[0] != "t") {
        throw InputError("trajectory CSV: header must start with 't'");
    }
    Index m = 0;
    Index p = 0;
    for (std::size_t i = 1; i < header.size(); ++i) {
        if (header[i].rfind("u", 0) == 0) {
            ++m;
        } else if (header[i].rfind("y", 0) == 0) {
            ++p;
        } else {
            throw InputError("trajectory CSV: unexpected column '" + header[i] + "'");
        }
    }
    if (p == 0) {
        throw InputError("trajectory CSV: no output columns");
    }

    std::vector<std::vector<double>> u_rows;
    std::vector<std::vector<double>> y_rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto cells = split_csv_line(line);
        if (static_cast<Index>(cells.size()) != 1 + m + p) {
            throw InputError("trajectory CSV: wrong number of cells in a data row");
        }
        std::vector<double> u_row;
        bool u_present = true;
        for (Index i = 0; i < m; ++i) {
            const std::string& cell = cells[static_cast<std::size_t>(1 + i)];
            if (cell.empty()) {
                u_present = false;
                break;
            }
            u_row.push_back(std::stod(cell));
        }
        if (u_present && m > 0) {
            if (u_rows.size() != y_rows.size()) {
                throw InputError("trajectory CSV: input cells reappear after a gap");
            }
            u_rows.push_back(std::move(u_row));
        }
        std::vector<double> y_row;
        for (Index i = 0; i < p; ++i) {
            y_row.push_back(std::stod(cells[static_cast<std::size_t>(1 + m + i)]));
        }
        y_rows.push_back(std::move(y_row));
    }

    Trajectory t;
    t.u.resize(m, static_cast<Index>(u_rows.size()));
    for (std::size_t c = 0; c < u_rows.size(); ++c) {
        for (Index i = 0; i < m; ++i) {
            t.u(i, static_cast<Index>(c)) = u_rows[c][static_cast<std::size_t>(i)];
        }
    }
    t.y.resize(p, static_cast<Index>(y_rows.size()));
    for (std::size_t c = 0; c < y_rows.size(); ++c) {
        for (Index i = 0; i < p; ++i) {
            t.y(i, static_cast<Index>(c)) = y_rows[c][static_cast<std::size_t>(i)];
        }
    }
    return t;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write file: " + path);
    }
    out << contents;
}

} // namespace qmi::io
