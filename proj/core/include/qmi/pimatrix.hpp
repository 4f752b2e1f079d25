#pragma once

#include <Eigen/Dense>

#include "qmi/errors.hpp"

namespace qmi {

/// Partitioned symmetric (q+p) x (q+p) matrix with blocks
/// [ b11 b12 ; b21 b22 ], b11 of size q x q and b22 of size p x p.
/// Also carries the noise model and the data matrix of the
/// identification pipeline, which share this partitioned structure.
struct PiMatrix {
    Eigen::Index q = 0;
    Eigen::Index p = 0;
    Eigen::MatrixXd mat;

    PiMatrix() = default;
    PiMatrix(Eigen::Index q_, Eigen::Index p_, Eigen::MatrixXd mat_);

    Eigen::Index size() const { return q + p; }

    auto block11() const { return mat.topLeftCorner(q, q); }
    auto block12() const { return mat.topRightCorner(q, p); }
    auto block21() const { return mat.bottomLeftCorner(p, q); }
    auto block22() const { return mat.bottomRightCorner(p, p); }
};

} // namespace qmi
