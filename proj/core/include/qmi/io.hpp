#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include <nlohmann/json_fwd.hpp>

#include "qmi/oracle.hpp"
#include "qmi/sysid.hpp"

namespace qmi::io {

using nlohmann::json;

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// { "q": int, "p": int, "matrix": [[row], ...] }; symmetry is validated on
/// load with relative tolerance 1e-12.
json pi_to_json(const PiMatrix& pi);
PiMatrix pi_from_json(const json& j);

json summary_to_json(const SetSummary& s);
SetSummary summary_from_json(const json& j);

json oracle_to_json(const OracleReport& r);

json transform_to_json(const TransformSpec& t);
TransformSpec transform_from_json(const json& j);

json prior_to_json(const PriorKnowledge& pk);
PriorKnowledge prior_from_json(const json& j);

json coefficients_to_json(const ArxCoefficients& c);
ArxCoefficients coefficients_from_json(const json& j);

json report_to_json(const IdentificationReport& r);

/// Noise description as read from disk: either a raw partitioned matrix or
/// an energy-ball shorthand that is instantiated once the data dimensions
/// are known.
struct EnergyBallSpec {
    Vector center;
    double bound_sq = 0.0;
};
using NoiseSpec = std::variant<PiMatrix, EnergyBallSpec>;

NoiseSpec noise_spec_from_json(const json& j);
NoiseModel make_noise_model(const NoiseSpec& spec, Index p, Index cols);

/// Trajectory CSV with header t,u1..um,y1..yp and one row per sample time.
/// Inputs typically run out before outputs; missing trailing inputs are
/// written as empty cells.
struct Trajectory {
    Matrix u; // m x n_u
    Matrix y; // p x (T+1)
};

void write_trajectory_csv(std::ostream& out, const Trajectory& t);
Trajectory read_trajectory_csv(std::istream& in);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

} // namespace qmi::io
