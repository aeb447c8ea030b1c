#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "real.hpp"

namespace fo::seqgen {

// Strictly increasing positive integer exponents s_1 < s_2 < ...
class ExponentRule {
public:
    enum class Kind { identity, affine, explicit_list };

    ExponentRule() = default; // identity
    static ExponentRule identity();
    static ExponentRule affine(std::int64_t a, std::int64_t d);
    static ExponentRule explicit_list(std::vector<std::int64_t> exponents);

    Kind kind() const { return kind_; }
    std::int64_t affine_a() const { return a_; }
    std::int64_t affine_d() const { return d_; }
    const std::vector<std::int64_t>& list() const { return list_; }

    // 1-based; throws FO_EINVAL past the end of an explicit list.
    std::int64_t exponent(std::uint64_t n) const;
    std::uint64_t max_points() const;

private:
    Kind kind_ = Kind::identity;
    std::int64_t a_ = 1, d_ = 1;
    std::vector<std::int64_t> list_;
};

struct OrbitSpec {
    Dyadic xi;
    Dyadic x;
    ExponentRule rule;
    double interval_a = 1.1;
    double interval_b = 2.1;

    // Validates xi > 0, x > 1, 1 < A < B.
    static OrbitSpec make(Dyadic xi, Dyadic x, ExponentRule rule,
                          double interval_a = 1.1, double interval_b = 2.1);
};

struct CertifiedPointList {
    std::vector<double> values;        // in [0,1)
    std::vector<double> radii;         // per-point certified radius
    std::vector<std::int64_t> exponents; // s_n (row index for iid points)
    std::uint64_t precision_bits = 0;

    std::size_t size() const { return values.size(); }
    double max_radius() const;
};

inline constexpr std::uint64_t kPrecisionCapBits = 1ull << 24;
inline constexpr double kDefaultEps = 0x1.0p-40;
inline constexpr int kMaxRetries = 8;

// ceil(s_N log2 x) + ceil(log2(xi+2)) + ceil(log2(1/eps)) + 64 guard bits.
std::uint64_t required_precision(const OrbitSpec& spec, std::uint64_t n_points, double eps);

// frac(xi * x^{s_n}) by incremental interval multiplication with directed
// rounding; every point certified to radius < eps. Doubles precision and
// regenerates (up to kMaxRetries) when a certified interval touches an
// integer boundary. min_precision_bits forces a higher starting precision
// (used by regeneration cross-checks).
CertifiedPointList generate_power_orbit(const OrbitSpec& spec, std::uint64_t n_points,
                                        double eps = kDefaultEps,
                                        std::uint64_t min_precision_bits = 0);

// frac(s_n * x) at fixed tolerance 2^-40; x parsed from decimal, hex-float
// or "p/q" text and certified by interval parse.
CertifiedPointList generate_linear_orbit(const std::string& x_text, const ExponentRule& rule,
                                         std::uint64_t n_points);

CertifiedPointList generate_iid(std::uint64_t seed, std::uint64_t n_points);

// A + (B-A) * k / 2^mantissa_bits for a drawn k; exactly representable,
// redrawn while the result is <= 1. mantissa_bits in [16,128].
Dyadic sample_x(double a, double b, std::uint64_t seed, unsigned mantissa_bits);

} // namespace fo::seqgen
