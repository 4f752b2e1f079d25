#include "qmi/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

namespace qmi {

GaugeSpec GaugeSpec::schatten(double p) {
    if (std::isnan(p) || p < 1.0) {
        throw InputError("GaugeSpec: Schatten exponent must satisfy p >= 1");
    }
    return GaugeSpec(Kind::schatten, p, 1, Vector());
}

GaugeSpec GaugeSpec::ky_fan(Index k) {
    if (k < 1) {
        throw InputError("GaugeSpec: Ky Fan order must satisfy k >= 1");
    }
    return GaugeSpec(Kind::ky_fan, 1.0, k, Vector());
}

GaugeSpec GaugeSpec::weighted(Vector weights) {
    if (weights.size() == 0 || weights(0) <= 0.0) {
        throw InputError("GaugeSpec: weights must be nonempty with w1 > 0");
    }
    for (Index i = 0; i < weights.size(); ++i) {
        if (!std::isfinite(weights(i)) || weights(i) < 0.0) {
            throw InputError("GaugeSpec: weights must be finite and nonnegative");
        }
        if (i + 1 < weights.size() && weights(i) < weights(i + 1)) {
            throw InputError("GaugeSpec: weights must be nonincreasing");
        }
    }
    return GaugeSpec(Kind::weighted, 1.0, 1, std::move(weights));
}

std::string GaugeSpec::id() const {
    std::ostringstream out;
    switch (kind_) {
    case Kind::schatten:
        if (std::isinf(p_)) {
            return "spectral";
        }
        if (p_ == 2.0) {
            return "frobenius";
        }
        if (p_ == 1.0) {
            return "nuclear";
        }
        out << "schatten:" << p_;
        return out.str();
    case Kind::ky_fan:
        out << "kyfan:" << k_;
        return out.str();
    case Kind::weighted:
        out << "weighted:";
        for (Index i = 0; i < weights_.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << weights_(i);
        }
        return out.str();
    }
    throw Error("GaugeSpec: unreachable");
}

GaugeSpec GaugeSpec::parse(const std::string& id) {
    if (id == "frobenius") {
        return frobenius();
    }
    if (id == "spectral") {
        return spectral();
    }
    if (id == "nuclear") {
        return nuclear();
    }
    const auto colon = id.find(':');
    const std::string head = id.substr(0, colon);
    const std::string tail = colon == std::string::npos ? "" : id.substr(colon + 1);
    try {
        if (head == "schatten") {
            return tail == "inf" ? spectral() : schatten(std::stod(tail));
        }
        if (head == "kyfan") {
            return ky_fan(static_cast<Index>(std::stol(tail)));
        }
        if (head == "weighted") {
            std::vector<double> ws;
            std::istringstream in(tail);
            std::string item;
            while (std::getline(in, item, ',')) {
                ws.push_back(std::stod(item));
            }
            Vector w = Eigen::Map<Vector>(ws.data(), static_cast<Index>(ws.size()));
            return weighted(std::move(w));
        }
    } catch (const std::logic_error&) {
        throw InputError("GaugeSpec: malformed gauge identifier '" + id + "'");
    }
    throw InputError("GaugeSpec: unknown gauge identifier '" + id + "'");
}

bool GaugeSpec::operator==(const GaugeSpec& other) const {
    if (kind_ != other.kind_) {
        return false;
    }
    switch (kind_) {
    case Kind::schatten:
        return p_ == other.p_;
    case Kind::ky_fan:
        return k_ == other.k_;
    case Kind::weighted:
        return weights_.size() == other.weights_.size() && weights_ == other.weights_;
    }
    return false;
}

namespace {

// Entrywise absolute values sorted nonincreasing; stable on ties.
std::vector<double> sorted_magnitudes(const Vector& x) {
    std::vector<double> mags(static_cast<std::size_t>(x.size()));
    for (Index i = 0; i < x.size(); ++i) {
        mags[static_cast<std::size_t>(i)] = std::abs(x(i));
    }
    std::stable_sort(mags.begin(), mags.end(), std::greater<double>());
    return mags;
}

} // namespace

double gauge_eval(const GaugeSpec& g, const Vector& x) {
    if (x.size() == 0) {
        throw InputError("gauge_eval: empty vector");
    }
    if (!x.allFinite()) {
        throw InputError("gauge_eval: non-finite entries");
    }
    const auto mags = sorted_magnitudes(x);
    switch (g.kind()) {
    case GaugeSpec::Kind::schatten: {
        const double p = g.exponent();
        if (std::isinf(p)) {
            return mags.front();
        }
        if (p == 1.0) {
            double sum = 0.0;
            for (double v : mags) {
                sum += v;
            }
            return sum;
        }
        if (p == 2.0) {
            return x.norm();
        }
        // Scale out the largest magnitude so pow() stays in range.
        const double top = mags.front();
        if (top == 0.0) {
            return 0.0;
        }
        double sum = 0.0;
        for (double v : mags) {
            sum += std::pow(v / top, p);
        }
        return top * std::pow(sum, 1.0 / p);
    }
    case GaugeSpec::Kind::ky_fan: {
        const std::size_t take = std::min<std::size_t>(mags.size(), static_cast<std::size_t>(g.top_count()));
        double sum = 0.0;
        for (std::size_t i = 0; i < take; ++i) {
            sum += mags[i];
        }
        return sum;
    }
    case GaugeSpec::Kind::weighted: {
        const Vector& w = g.weights();
        const std::size_t take = std::min<std::size_t>(mags.size(), static_cast<std::size_t>(w.size()));
        double sum = 0.0;
        for (std::size_t i = 0; i < take; ++i) {
            sum += w(static_cast<Index>(i)) * mags[i];
        }
        return sum;
    }
    }
    throw Error("gauge_eval: unreachable");
}

double gauge_e1(const GaugeSpec& g, Index n) {
    if (n < 1) {
        throw InputError("gauge_e1: n must be positive");
    }
    if (g.kind() == GaugeSpec::Kind::weighted) {
        return g.weights()(0);
    }
    return 1.0;
}

double gauge_ones(const GaugeSpec& g, Index n) {
    if (n < 1) {
        throw InputError("gauge_ones: n must be positive");
    }
    return gauge_eval(g, Vector::Ones(n));
}

double matrix_norm(const GaugeSpec& g, const Matrix& m) {
    return gauge_eval(g, singular_values(m));
}

StrictConvexity is_essentially_strictly_convex(const GaugeSpec& g) {
    switch (g.kind()) {
    case GaugeSpec::Kind::schatten: {
        const double p = g.exponent();
        return (p > 1.0 && !std::isinf(p)) ? StrictConvexity::yes : StrictConvexity::no;
    }
    case GaugeSpec::Kind::ky_fan:
        return StrictConvexity::no;
    case GaugeSpec::Kind::weighted:
        return StrictConvexity::unknown;
    }
    return StrictConvexity::unknown;
}

} // namespace qmi
