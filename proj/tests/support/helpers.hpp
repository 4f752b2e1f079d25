#pragma once

#include <vector>

#include "qmi/geometry.hpp"
#include "qmi/qmiset.hpp"
#include "qmi/random.hpp"
#include "qmi/sysid.hpp"

namespace helpers {

using namespace qmi;

/// Every gauge family the library implements, including one non-normalized
/// weighted gauge.
inline std::vector<GaugeSpec> all_gauges() {
    return {
        GaugeSpec::frobenius(),
        GaugeSpec::spectral(),
        GaugeSpec::nuclear(),
        GaugeSpec::schatten(3.0),
        GaugeSpec::ky_fan(2),
        GaugeSpec::weighted((Vector(2) << 2.0, 1.0).finished()),
    };
}

inline std::vector<GaugeSpec> normalized_gauges() {
    return {
        GaugeSpec::frobenius(),
        GaugeSpec::spectral(),
        GaugeSpec::nuclear(),
        GaugeSpec::schatten(3.0),
        GaugeSpec::ky_fan(2),
    };
}

/// Diagonal ellipsoid set: Pi = diag(1, -1/a^2, -1/b^2, -1/c^2), q = 1,
/// p = 3. Members are (z1, z2, z3)^T with sum z_i^2 / axis_i^2 <= 1.
inline PiMatrix ellipsoid_pi(double a, double b, double c) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0 / (a * a);
    m(2, 2) = -1.0 / (b * b);
    m(3, 3) = -1.0 / (c * c);
    return PiMatrix(1, 3, m);
}

/// Random strictly bounded class member. rank_deficit > 0 strips that many
/// eigenvalues from the Schur complement, producing a flat set.
inline PiMatrix random_strict_pi(rnd::Engine& rng, Index q, Index p, Index rank_deficit = 0) {
    const Matrix neg22 = rnd::spd(rng, p, 0.1);
    const Matrix b12 = rnd::gaussian(rng, q, p);
    const Index rank = std::max<Index>(q - rank_deficit, 0);
    Matrix g = Matrix::Zero(q, q);
    if (rank > 0) {
        const Matrix seed = rnd::gaussian(rng, q, rank);
        g = seed * seed.transpose();
    }
    // block22 = -neg22, so the schur complement is b11 + b12 neg22^{-1} b12^T.
    const Matrix b11 = g - b12 * neg22.ldlt().solve(b12.transpose());
    Matrix m(q + p, q + p);
    m.topLeftCorner(q, q) = detail::symmetrized(b11);
    m.topRightCorner(q, p) = b12;
    m.bottomLeftCorner(p, q) = b12.transpose();
    m.bottomRightCorner(p, p) = -neg22;
    return PiMatrix(q, p, detail::symmetrized(m));
}

/// Printed values of the mass-spring-damper experiment.
struct MsdPaperData {
    Matrix u;        // 1 x 5
    Matrix w;        // 1 x 4
    Matrix y_minus;  // 2 x 4
    Matrix y_plus;   // 1 x 4
    Matrix u_minus;  // 2 x 4
    double p0 = -0.6065, p1 = 0.5659, q0 = 0.1583, q1 = 0.1886;
    double euclidean_radius = 0.0458;
};

inline MsdPaperData msd_paper_data() {
    MsdPaperData d;
    d.u.resize(1, 5);
    d.u << 1, 0, -1, 0, 1;
    d.w.resize(1, 4);
    d.w << 0.0105, -0.0013, 0.0092, 0.0084;
    d.y_minus.resize(2, 4);
    d.y_minus << 0, 1, 0.7347, -0.3807,
                 1, 0.7347, -0.3807, -0.8101;
    d.y_plus.resize(1, 4);
    d.y_plus << 0.7347, -0.3807, -0.8101, -0.0305;
    d.u_minus.resize(2, 4);
    d.u_minus << 1, 0, -1, 0,
                 0, -1, 0, 1;
    return d;
}

/// One simulated identification problem with admissible noise.
struct Instance {
    ArxCoefficients truth;
    Matrix u;
    Matrix y;
    Matrix w;
    ArxDataset data;
    NoiseModel noise;
};

struct InstanceOptions {
    bool bias = false;            // nonzero off-diagonal noise-model block
    bool general_phi = false;     // non-identity precision block
    bool admissible = true;       // noise drawn inside the model set
    Index extra_cols = 3;         // data columns beyond the minimum s
};

inline Instance random_instance(rnd::Engine& rng, const InstanceOptions& opt = {}) {
    std::uniform_int_distribution<Index> pick_p(1, 3);
    std::uniform_int_distribution<Index> pick_m(1, 2);
    std::uniform_int_distribution<Index> pick_l(1, 2);

    for (;;) {
        const Index p = pick_p(rng);
        const Index m = pick_m(rng);
        const Index lag_out = pick_l(rng);
        std::uniform_int_distribution<Index> pick_min(0, lag_out);
        const Index lag_in = pick_min(rng);

        ArxCoefficients truth;
        truth.output_order = lag_out;
        truth.input_order = lag_in;
        truth.P = 0.4 * rnd::gaussian(rng, p, lag_out * p);
        truth.Q = rnd::gaussian(rng, p, (lag_in + 1) * m);

        const Index s = lag_out * p + (lag_in + 1) * m;
        const Index cols = s + opt.extra_cols;
        const Index horizon = cols + lag_out - 1;

        Matrix phi_mat = Matrix::Zero(p + cols, p + cols);
        if (opt.general_phi) {
            phi_mat.bottomRightCorner(cols, cols) = -rnd::spd(rng, cols, 0.3);
        } else {
            phi_mat.bottomRightCorner(cols, cols) = -Matrix::Identity(cols, cols);
        }
        if (opt.bias) {
            phi_mat.topRightCorner(p, cols) = 0.05 * rnd::gaussian(rng, p, cols);
            phi_mat.bottomLeftCorner(cols, p) = phi_mat.topRightCorner(p, cols).transpose();
        }
        const Matrix correction =
            phi_mat.topRightCorner(p, cols) *
            (-phi_mat.bottomRightCorner(cols, cols)).ldlt().solve(phi_mat.bottomLeftCorner(cols, p));
        const Matrix extra = 0.01 * rnd::spd(rng, p, 0.5);
        phi_mat.topLeftCorner(p, p) = detail::symmetrized(correction + extra);
        NoiseModel noise(PiMatrix(p, cols, detail::symmetrized(phi_mat)));

        Matrix w;
        if (opt.admissible) {
            const Matrix contraction = rnd::contraction(rng, cols, p);
            w = parametrize(noise.phi, contraction).transpose();
        } else {
            w = 0.1 * rnd::gaussian(rng, p, cols);
        }

        const Matrix u = rnd::gaussian(rng, m, horizon + lag_in - lag_out + 1);
        const Matrix y_init = rnd::gaussian(rng, p, lag_out);
        const Matrix y = simulate_arx(truth, u, y_init, w, horizon);
        if (y.cwiseAbs().maxCoeff() > 100.0) {
            continue; // keep the regressor well conditioned
        }
        const ArxDataset data = build_data_matrices(u, y, lag_out, lag_in);
        if (numeric_rank(data.regressor().transpose()) != s) {
            continue;
        }
        return Instance{std::move(truth), u, y, w, data, std::move(noise)};
    }
}

} // namespace helpers
