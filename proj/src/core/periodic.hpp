#pragma once

#include <cstdint>
#include <vector>

namespace fo::periodic {

struct FourierExpansion {
    std::uint32_t degree = 0;
    std::vector<double> cos_coef; // a_j, j = 1..degree
    std::vector<double> sin_coef; // b_j
};

// Period-1, mean-zero function: either a centered interval indicator
// 1_[a,b) - (b-a) or a trigonometric polynomial without constant term.
class PeriodicFunction {
public:
    enum class Kind { indicator, trig };

    static PeriodicFunction indicator(double a, double b); // 0 <= a < b <= 1
    static PeriodicFunction trig(std::vector<double> cos_coef, std::vector<double> sin_coef);

    Kind kind() const { return kind_; }
    double indicator_a() const { return a_; }
    double indicator_b() const { return b_; }
    std::uint32_t degree() const { return static_cast<std::uint32_t>(cos_.size()); }
    const std::vector<double>& cos_coef() const { return cos_; }
    const std::vector<double>& sin_coef() const { return sin_; }

    double eval(double t) const;

    // Closed forms: indicators give sqrt((b-a)(1-(b-a))), polynomials give
    // sqrt(1/2 sum (a_j^2 + b_j^2)).
    double l2_norm() const;

    // Total variation over one period (indicators jump twice; polynomials
    // integrate |p'| numerically).
    double variation() const;
    bool admissible(double tol = 1e-9) const { return variation() <= 2.0 + tol; }

    FourierExpansion fourier(std::uint32_t degree) const;
    PeriodicFunction partial_sum(std::uint32_t degree) const;
    double remainder_eval(std::uint32_t degree, double t) const;

private:
    PeriodicFunction() = default;
    Kind kind_ = Kind::indicator;
    double a_ = 0.0, b_ = 0.5;
    std::vector<double> cos_, sin_;
};

} // namespace fo::periodic
