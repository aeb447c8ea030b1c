#include "periodic.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace fo::periodic {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double frac(double t) {
    double f = t - std::floor(t);
    return f >= 1.0 ? 0.0 : f; // ties from rounding land back in [0,1)
}

} // namespace

PeriodicFunction PeriodicFunction::indicator(double a, double b) {
    require(a >= 0.0 && a < b && b <= 1.0, FO_EINVAL, "need 0 <= a < b <= 1");
    PeriodicFunction f;
    f.kind_ = Kind::indicator;
    f.a_ = a;
    f.b_ = b;
    return f;
}

PeriodicFunction PeriodicFunction::trig(std::vector<double> cos_coef,
                                        std::vector<double> sin_coef) {
    require(cos_coef.size() == sin_coef.size(), FO_EINVAL,
            "cos/sin coefficient lists must have equal length");
    require(!cos_coef.empty(), FO_EINVAL, "polynomial needs degree >= 1");
    for (double c : cos_coef) require(std::isfinite(c), FO_EINVAL, "coefficients must be finite");
    for (double c : sin_coef) require(std::isfinite(c), FO_EINVAL, "coefficients must be finite");
    PeriodicFunction f;
    f.kind_ = Kind::trig;
    f.cos_ = std::move(cos_coef);
    f.sin_ = std::move(sin_coef);
    return f;
}

double PeriodicFunction::eval(double t) const {
    if (kind_ == Kind::indicator) {
        double u = frac(t);
        double len = b_ - a_;
        return (u >= a_ && u < b_) ? 1.0 - len : -len;
    }
    double s = 0.0;
    for (std::size_t j = 0; j < cos_.size(); ++j) {
        double w = kTwoPi * static_cast<double>(j + 1) * t;
        s += cos_[j] * std::cos(w) + sin_[j] * std::sin(w);
    }
    return s;
}

double PeriodicFunction::l2_norm() const {
    if (kind_ == Kind::indicator) {
        double len = b_ - a_;
        return std::sqrt(len * (1.0 - len));
    }
    double s = 0.0;
    for (std::size_t j = 0; j < cos_.size(); ++j) s += cos_[j] * cos_[j] + sin_[j] * sin_[j];
    return std::sqrt(0.5 * s);
}

double PeriodicFunction::variation() const {
    if (kind_ == Kind::indicator) return 2.0; // two unit jumps
    // composite Simpson on |p'| over one period
    const int panels = 1 << 12;
    auto dp = [&](double t) {
        double s = 0.0;
        for (std::size_t j = 0; j < cos_.size(); ++j) {
            double w = kTwoPi * static_cast<double>(j + 1);
            s += w * (-cos_[j] * std::sin(w * t) + sin_[j] * std::cos(w * t));
        }
        return std::abs(s);
    };
    double h = 1.0 / panels;
    double sum = dp(0.0) + dp(1.0);
    for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * dp(i * h);
    return sum * h / 3.0;
}

FourierExpansion PeriodicFunction::fourier(std::uint32_t degree) const {
    require(degree >= 1, FO_EINVAL, "degree must be >= 1");
    FourierExpansion e;
    e.degree = degree;
    e.cos_coef.resize(degree, 0.0);
    e.sin_coef.resize(degree, 0.0);
    if (kind_ == Kind::indicator) {
        for (std::uint32_t j = 1; j <= degree; ++j) {
            const double w = kTwoPi * static_cast<double>(j);
            const double pij = M_PI * static_cast<double>(j);
            e.cos_coef[j - 1] = (std::sin(w * b_) - std::sin(w * a_)) / pij;
            e.sin_coef[j - 1] = (std::cos(w * a_) - std::cos(w * b_)) / pij;
        }
        return e;
    }
    for (std::uint32_t j = 1; j <= degree && j <= cos_.size(); ++j) {
        e.cos_coef[j - 1] = cos_[j - 1];
        e.sin_coef[j - 1] = sin_[j - 1];
    }
    return e;
}

PeriodicFunction PeriodicFunction::partial_sum(std::uint32_t degree) const {
    auto e = fourier(degree);
    return trig(std::move(e.cos_coef), std::move(e.sin_coef));
}

double PeriodicFunction::remainder_eval(std::uint32_t degree, double t) const {
    return eval(t) - partial_sum(degree).eval(t);
}

} // namespace fo::periodic
