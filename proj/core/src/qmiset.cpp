#include "qmi/qmiset.hpp"

#include <algorithm>
#include <cmath>

#include "qmi/random.hpp"

namespace qmi {

namespace {

double spectral_scale(const Matrix& m) {
    return m.size() == 0 ? 0.0 : singular_values(m)(0);
}

} // namespace

ClassLabel classify(const PiMatrix& pi, double tol) {
    if (pi.q < 1 || pi.p < 1) {
        throw InputError("classify: both block sizes must be positive");
    }
    if (pi.mat.rows() != pi.size() || pi.mat.cols() != pi.size()) {
        throw InputError("classify: matrix shape does not match block sizes");
    }
    const double pi_scale = spectral_scale(pi.mat);
    if ((pi.mat - pi.mat.transpose()).cwiseAbs().maxCoeff() > tol * std::max(pi_scale, 1.0)) {
        return {ClassLabel::Value::not_in_class, "matrix is not symmetric"};
    }

    const Matrix b22 = detail::symmetrized(pi.block22());
    Eigen::SelfAdjointEigenSolver<Matrix> es22(b22);
    const Vector& lam22 = es22.eigenvalues();
    const double scale22 = std::max(std::abs(lam22(0)), std::abs(lam22(lam22.size() - 1)));
    if (lam22(lam22.size() - 1) > tol * scale22) {
        return {ClassLabel::Value::not_in_class, "block22 has a positive eigenvalue"};
    }

    // Kernel inclusion: eigenvectors of block22 with eigenvalue ~0 must be
    // annihilated by block12.
    const double b12_scale = std::max(spectral_scale(pi.block12()), 1.0);
    bool strict = true;
    for (Index i = 0; i < lam22.size(); ++i) {
        if (std::abs(lam22(i)) <= tol * scale22) {
            strict = false;
            const Vector v = es22.eigenvectors().col(i);
            if ((pi.block12() * v).norm() > tol * b12_scale) {
                return {ClassLabel::Value::not_in_class,
                        "kernel of block22 is not contained in kernel of block12"};
            }
        }
    }

    const Matrix sc = schur_complement(pi);
    Eigen::SelfAdjointEigenSolver<Matrix> essc(sc);
    const Vector& lamsc = essc.eigenvalues();
    const double scale_sc =
        std::max(std::abs(lamsc(lamsc.size() - 1)), pi_scale);
    if (lamsc(0) < -tol * scale_sc) {
        return {ClassLabel::Value::not_in_class, "generalized Schur complement is not PSD"};
    }

    return {strict ? ClassLabel::Value::in_class_strict : ClassLabel::Value::in_class, ""};
}

bool contains(const PiMatrix& pi, const Matrix& z, double tol) {
    if (z.rows() != pi.p || z.cols() != pi.q) {
        throw InputError("contains: candidate must be p x q");
    }
    Matrix stacked(pi.size(), pi.q);
    stacked.topRows(pi.q) = Matrix::Identity(pi.q, pi.q);
    stacked.bottomRows(pi.p) = z;
    const Matrix quad = detail::symmetrized(stacked.transpose() * pi.mat * stacked);
    Eigen::SelfAdjointEigenSolver<Matrix> es(quad);
    // Relative slack grows with the stacked norm, the round-off envelope of
    // the quadratic form, so boundary points from parametrize always pass.
    const double scale = spectral_scale(pi.mat) * std::max(1.0, stacked.squaredNorm());
    return es.eigenvalues()(0) >= -tol * scale;
}

FactoredForm factored_form(const PiMatrix& pi) {
    const ClassLabel label = classify(pi);
    if (!label.strict()) {
        throw NotStrictError(label.in_class()
                                 ? "factored_form: block22 is singular"
                                 : "factored_form: not in class (" + label.reason + ")");
    }
    const Matrix neg22 = detail::symmetrized(-pi.block22());
    Eigen::SelfAdjointEigenSolver<Matrix> es(neg22);
    Vector inv_sqrt(es.eigenvalues().size());
    for (Index i = 0; i < inv_sqrt.size(); ++i) {
        inv_sqrt(i) = 1.0 / std::sqrt(es.eigenvalues()(i));
    }
    FactoredForm f;
    f.lfac = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
    f.x0 = neg22.ldlt().solve(pi.block21());
    // classify already vetted the Schur complement against the scale of the
    // whole matrix. Eigenvalues at round-off level (in either sign) are
    // zeroed so that the factor's kernel is exact and constructed
    // affine-hull directions stay in the hull.
    Eigen::SelfAdjointEigenSolver<Matrix> essc(schur_complement(pi));
    const Vector& lam = essc.eigenvalues();
    const double cut = kDefaultRankTol *
                       std::max(lam(lam.size() - 1), spectral_scale(pi.mat));
    Vector roots(lam.size());
    for (Index i = 0; i < lam.size(); ++i) {
        roots(i) = lam(i) > cut ? std::sqrt(lam(i)) : 0.0;
    }
    f.rfac = essc.eigenvectors() * roots.asDiagonal() * essc.eigenvectors().transpose();
    return f;
}

Matrix parametrize(const PiMatrix& pi, const Matrix& s, double tol) {
    if (s.rows() != pi.p || s.cols() != pi.q) {
        throw InputError("parametrize: parameter must be p x q");
    }
    const double top = spectral_scale(s);
    if (top > 1.0 + tol) {
        throw ContractionViolated("parametrize: sigma_1(S) = " + std::to_string(top));
    }
    const FactoredForm f = factored_form(pi);
    return f.x0 + f.lfac * s * f.rfac;
}

std::vector<Matrix> sample(const PiMatrix& pi, Index n, std::uint64_t seed, SampleMode mode) {
    if (n < 1) {
        throw InputError("sample: n must be positive");
    }
    const FactoredForm f = factored_form(pi);
    rnd::Engine rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Matrix> points;
    points.reserve(static_cast<std::size_t>(n));
    const Index k = std::min(pi.p, pi.q);
    for (Index i = 0; i < n; ++i) {
        Matrix s;
        if (mode == SampleMode::interior) {
            s = rnd::gaussian(rng, pi.p, pi.q);
            s /= std::max(1.0, spectral_scale(s));
            s *= unit(rng);
        } else {
            Matrix sigma = Matrix::Zero(pi.p, pi.q);
            sigma.topLeftCorner(k, k) = Matrix::Identity(k, k);
            s = rnd::orthogonal(rng, pi.p) * sigma * rnd::orthogonal(rng, pi.q).transpose();
        }
        points.push_back(f.x0 + f.lfac * s * f.rfac);
    }
    return points;
}

bool is_bounded(const PiMatrix& pi, double tol) {
    const ClassLabel label = classify(pi, tol);
    if (!label.in_class()) {
        throw NotInClassError("is_bounded: " + label.reason);
    }
    return label.strict();
}

} // namespace qmi
