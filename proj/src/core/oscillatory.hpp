#pragma once

#include <cstdint>

namespace fo::osc {

// Phase psi(x) in cycles: the integrand is e^{2 pi i psi(x)}.
// single: xi * j * x^n.  pair: xi * (j x^n +- k x^m), minus needs m < n.
struct PhaseSpec {
    enum class Kind { single, pair };

    static PhaseSpec single(std::uint32_t j, std::uint32_t n, double xi);
    static PhaseSpec pair(std::uint32_t j, std::uint32_t k, std::uint32_t n, std::uint32_t m,
                          int sign, double xi);

    double cycles(double x) const;
    double dcycles(double x) const;
    double d2cycles(double x) const;

    Kind kind = Kind::single;
    int sign = +1;
    bool negated = false; // integrate e^{-2 pi i psi} instead
    std::uint32_t j = 1, k = 1, n = 1, m = 1;
    double xi = 1.0;
};

struct CertifiedIntegral {
    double re = 0.0;
    double im = 0.0;
    double abs_value = 0.0;
    double error_bound = 0.0;
    std::uint64_t evaluations = 0;
    bool converged = false;
};

struct BoundCheck {
    double bound = 0.0;
    double integral_abs = 0.0; // |Re| for the cosine checks
    double error_bound = 0.0;
    bool pass = false;
};

// Disjoint pieces on which the phase derivative is single-signed and
// monotonic, away from a band around its root x1. Empty pieces are
// encoded as lo > hi.
struct PartitionResult {
    double x1 = 0.0; // root of the phase derivative
    double x2 = 0.0; // root of the second derivative (0 when m == 1)
    double band_lo = 0.0, band_hi = 0.0;
    double i1_lo = 1.0, i1_hi = 0.0;
    double i2_lo = 1.0, i2_hi = 0.0;
    double i3_lo = 1.0, i3_hi = 0.0;
    double eta = 0.0;
    double excluded_measure = 0.0;
    double a = 0.0, b = 0.0;
    double xi = 1.0;
    std::uint32_t j = 1, k = 1, m = 1, n = 2;

    bool contains(double alpha, double beta) const; // inside one piece
};

inline constexpr std::uint64_t kNodeBudget = 1ull << 20;

// Adaptive panel quadrature of e^{2 pi i psi}; panels are split until the
// per-panel phase span is below a quarter cycle and the two-level error
// estimate meets the tolerance share. tol in (0, 1e-3].
CertifiedIntegral integral(const PhaseSpec& phase, double alpha, double beta, double tol,
                           std::uint64_t node_budget = kNodeBudget);

// 1/(j xi n alpha^(n-1)): oscillation bound for a single power phase on
// [alpha, beta] with alpha > 1.
double single_phase_bound(std::uint32_t j, double xi, std::uint32_t n, double alpha);
BoundCheck single_phase_check(const PhaseSpec& phase, double alpha, double beta, double tol);

// 1/(xi max(m,n) alpha^(max(m,n)-1)) for the plus-sign pair phase.
double pair_phase_bound(double xi, std::uint32_t n, std::uint32_t m, double alpha);
BoundCheck pair_phase_check(const PhaseSpec& phase, double alpha, double beta, double tol);

PartitionResult build_partition(std::uint32_t j, std::uint32_t k, std::uint32_t m,
                                std::uint32_t n, double xi, double eta, double a, double b);

// 1/(xi eta m alpha^(m-1)) valid on subintervals inside one piece.
double partition_bound(const PartitionResult& part, double alpha);
BoundCheck partition_check(const PartitionResult& part, double alpha, double beta, double tol);

} // namespace fo::osc
