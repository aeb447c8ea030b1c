#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "periodic.hpp"
#include "seqgen.hpp"

namespace fo::stats {

// Standard normal distribution function, absolute error well below 1e-10.
double normal_cdf(double t);

// sup_t |F_M(t) - Phi(t)| over the sorted-sample candidates.
double ks_distance_to_normal(std::vector<double> samples);

// Block-sum grid N(M) = sum_{i<=M} (i^4 + i).
std::vector<std::uint64_t> nform_values(std::uint64_t max_m);
std::uint64_t nform_floor(std::uint64_t n); // largest grid value <= n, n >= 2

// log(max{1, log N}), floored at its N = 16 value.
double loglog_guarded(double n);

enum class GridKind { dyadic, nform };
enum class Variant { star, extremal };

struct LilRow {
    std::uint64_t n = 0;
    double d_star = 0.0;
    double d_extremal = 0.0;
    double stat_star = 0.0;     // sqrt(N) D*_N / sqrt(loglog N)
    double stat_extremal = 0.0;
    double running_max = 0.0;   // prefix max of the variant statistic
};

struct LilTrajectory {
    std::vector<LilRow> rows;
    Variant variant = Variant::star;
    bool degenerate = false; // D_N = 1 at the last grid point (all-equal orbit)
};

std::vector<std::uint64_t> dyadic_grid(std::uint64_t n_max);

LilTrajectory lil_scan(const seqgen::CertifiedPointList& points,
                       const std::vector<std::uint64_t>& grid, Variant variant);
LilTrajectory lil_scan(const seqgen::CertifiedPointList& points, GridKind grid,
                       Variant variant);

struct CltParams {
    Dyadic xi;
    double interval_a = 1.1;
    double interval_b = 2.1;
    std::uint64_t n_terms = 1ull << 12;
    std::uint64_t n_draws = 2000;
    std::uint64_t seed = 0;
    unsigned mantissa_bits = 53;
    unsigned threads = 0; // 0 = hardware concurrency
};

struct CltSample {
    std::uint64_t n_terms = 0;
    std::vector<double> x_values;   // draw, as double, for reporting
    std::vector<std::string> x_hex; // exact dyadic draws
    std::vector<double> t_norm;     // sum / (||f|| sqrt N)
    std::vector<double> t_raw;      // sum / sqrt N
    double ks_norm = 0.0;
    double ks_raw = 0.0;
};

// Monte Carlo over x: per-draw substreams keyed by (seed, draw index) so
// results are independent of the thread count.
CltSample clt_sample(const periodic::PeriodicFunction& f, const seqgen::ExponentRule& rule,
                     const CltParams& par);

struct RefConstants {
    double lil_power_orbit;
    double kesten;
    double fukuyama_base2;
    double chung_smirnov;
    double fukuyama_irrational;
};

RefConstants reference_constants();

} // namespace fo::stats
