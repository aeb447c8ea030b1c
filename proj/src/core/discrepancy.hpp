#pragma once

#include <cstdint>

#include "seqgen.hpp"

namespace fo::disc {

// All interval conventions are left-closed/right-open, matching the
// empirical measure count #{n : a <= x_n < b}.

struct Report {
    std::uint64_t n = 0;
    double d_star = 0.0;
    double d_extremal = 0.0;
    double slack = 0.0; // propagated from point radii
};

struct DyadicReport {
    std::uint32_t r = 0;
    double d_small = 0.0;
    double d_large = 0.0;
    double d_large_star = 0.0;
};

struct SandwichReport {
    double d_star = 0.0;
    double d_extremal = 0.0;
    double d_small = 0.0;
    double d_large = 0.0;
    double d_large_star = 0.0;
    double slack = 0.0;
    bool holds = false;
};

struct CountReport {
    std::uint64_t count = 0;    // midpoint values, a <= v < b
    std::uint64_t count_lo = 0; // certainly inside
    std::uint64_t count_hi = 0; // possibly inside
    bool ambiguous = false;
};

struct BruteResult {
    double d_star = 0.0;
    double d_extremal = 0.0;
};

inline constexpr std::uint64_t kBruteForceGuard = 4096;
inline constexpr std::uint32_t kMaxDyadicLevel = 20;

double star_discrepancy(const seqgen::CertifiedPointList& points);
double extremal_discrepancy(const seqgen::CertifiedPointList& points);
Report report(const seqgen::CertifiedPointList& points);

// O(N^2) supremum over candidate interval endpoints {0, 1, values,
// values as open limits}; exact for the half-open convention. Test oracle.
BruteResult brute_force_discrepancy(const seqgen::CertifiedPointList& points);

// sup over cells [a 2^-R, a 2^-R + b), b in [0, 2^-R], of the centered
// empirical deviation |count/N - b|.
double dyadic_small_discrepancy(const seqgen::CertifiedPointList& points, std::uint32_t r);

// Grid-interval deviations over endpoints a 2^-R < b 2^-R (d_large) and
// anchored at 0 (d_large_star).
DyadicReport dyadic_large_discrepancy(const seqgen::CertifiedPointList& points, std::uint32_t r);

// D*(>=R) <= D* <= D <= D(>=R) + 3 D(<=R), allowing slack + 1e-12.
SandwichReport sandwich_check(const seqgen::CertifiedPointList& points, std::uint32_t r);

CountReport empirical_measure(const seqgen::CertifiedPointList& points, double a, double b);

} // namespace fo::disc
