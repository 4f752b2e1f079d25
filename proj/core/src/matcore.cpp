#include "qmi/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace qmi {

namespace detail {

Matrix symmetrized(const Matrix& m) {
    return 0.5 * (m + m.transpose());
}

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) {
        throw InputError(std::string(what) + ": non-finite entries");
    }
}

} // namespace detail

Vector singular_values(const Matrix& m) {
    detail::require_finite(m, "singular_values");
    if (m.size() == 0) {
        return Vector(0);
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues();
}

double smallest_nonzero_singular_value(const Matrix& m, double rank_tol) {
    if (rank_tol < 0) {
        throw InputError("smallest_nonzero_singular_value: rank_tol must be nonnegative");
    }
    const Vector sv = singular_values(m);
    if (sv.size() == 0 || sv(0) == 0.0) {
        return 0.0;
    }
    const double cut = rank_tol * sv(0);
    double smallest = 0.0;
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cut) {
            smallest = sv(i);
        }
    }
    return smallest;
}

Matrix psd_sqrt(const Matrix& m, double tol) {
    detail::require_finite(m, "psd_sqrt");
    if (m.rows() != m.cols()) {
        throw InputError("psd_sqrt: matrix must be square");
    }
    if (m.size() == 0) {
        return m;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(detail::symmetrized(m));
    const Vector& evals = es.eigenvalues();
    const double scale = std::max(std::abs(evals(0)), std::abs(evals(evals.size() - 1)));
    Vector roots(evals.size());
    for (Index i = 0; i < evals.size(); ++i) {
        if (evals(i) < -tol * scale) {
            throw NotPositiveSemidefinite("psd_sqrt: eigenvalue " + std::to_string(evals(i)) +
                                          " below -tol * sigma_1 = " + std::to_string(-tol * scale));
        }
        roots(i) = evals(i) > 0.0 ? std::sqrt(evals(i)) : 0.0;
    }
    return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().transpose();
}

Matrix pseudo_inverse(const Matrix& m, double rank_tol) {
    detail::require_finite(m, "pseudo_inverse");
    if (m.size() == 0) {
        return m.transpose();
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    const double cut = sv.size() > 0 ? rank_tol * sv(0) : 0.0;
    Vector inv = Vector::Zero(sv.size());
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cut && sv(i) > 0.0) {
            inv(i) = 1.0 / sv(i);
        }
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Matrix schur_complement(const PiMatrix& pi, double rank_tol) {
    const Matrix reduced =
        pi.block11() - pi.block12() * pseudo_inverse(pi.block22(), rank_tol) * pi.block21();
    return detail::symmetrized(reduced);
}

Index numeric_rank(const Matrix& m, double rank_tol) {
    const Vector sv = singular_values(m);
    if (sv.size() == 0 || sv(0) == 0.0) {
        return 0;
    }
    const double cut = rank_tol * sv(0);
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cut) {
            ++rank;
        }
    }
    return rank;
}

bool weak_majorizes(const Vector& y, const Vector& x) {
    if (y.size() != x.size()) {
        throw InputError("weak_majorizes: length mismatch");
    }
    std::vector<double> xs(x.data(), x.data() + x.size());
    std::vector<double> ys(y.data(), y.data() + y.size());
    std::sort(xs.begin(), xs.end(), std::greater<double>());
    std::sort(ys.begin(), ys.end(), std::greater<double>());
    double sum_x = 0.0;
    double sum_y = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sum_x += xs[k];
        sum_y += ys[k];
        if (sum_x > sum_y) {
            return false;
        }
    }
    return true;
}

Vector truncate_or_pad(const Vector& x, Index k) {
    if (k < 1) {
        throw InputError("truncate_or_pad: k must be positive");
    }
    Vector out = Vector::Zero(k);
    const Index n = std::min(k, x.size());
    out.head(n) = x.head(n);
    return out;
}

PiMatrix::PiMatrix(Eigen::Index q_, Eigen::Index p_, Eigen::MatrixXd mat_)
    : q(q_), p(p_), mat(std::move(mat_)) {
    if (q < 0 || p < 0 || q + p == 0) {
        throw InputError("PiMatrix: block sizes must be nonnegative and not both zero");
    }
    if (mat.rows() != q + p || mat.cols() != q + p) {
        throw InputError("PiMatrix: matrix must be (q+p) x (q+p)");
    }
    detail::require_finite(mat, "PiMatrix");
}

} // namespace qmi
