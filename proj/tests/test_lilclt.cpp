#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "discrepancy.hpp"
#include "error.hpp"
#include "lilclt.hpp"
#include "rng.hpp"
#include "seqgen.hpp"

using namespace fo;
using namespace fo::stats;

namespace {

// independent oracle: integrate the normal density with composite Simpson
double normal_cdf_oracle(double t) {
    const double lo = -12.0;
    if (t <= lo) return 0.0;
    const int panels = 40000;
    const double h = (t - lo) / panels;
    auto dens = [](double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * M_PI); };
    double s = dens(lo) + dens(t);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * dens(lo + i * h);
    return s * h / 3.0;
}

// inverse normal via bisection on the cdf, fine for test-side quantiles
double normal_quantile(double p) {
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("normal cdf basics and oracle agreement") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(normal_cdf(1.959964) == doctest::Approx(0.975).epsilon(0).scale(1).epsilon(1e-6));
    CHECK(normal_cdf(-8.0) < 1e-14);
    CHECK(normal_cdf(8.0) > 1.0 - 1e-14);

    auto rng = substream(4001, 0);
    for (int i = 0; i < 100; ++i) {
        double t = -6.0 + 12.0 * rng.next_unit();
        CHECK(normal_cdf(t) + normal_cdf(-t) == doctest::Approx(1.0).epsilon(1e-10));
    }
    for (double t : {-3.0, -1.5, -0.2, 0.0, 0.7, 1.3, 2.9, 4.5})
        CHECK(normal_cdf(t) == doctest::Approx(normal_cdf_oracle(t)).epsilon(0).scale(1).epsilon(1e-10));

    double prev = -1.0;
    for (int i = 0; i <= 10000; ++i) {
        double v = normal_cdf(-8.0 + 16.0 * i / 10000.0);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("ks distance closed form and fine-grid oracle") {
    CHECK(ks_distance_to_normal({0.0}) == 0.5);

    std::vector<double> quantiles;
    for (int i = 1; i <= 99; ++i) quantiles.push_back(normal_quantile(i / 100.0));
    CHECK(ks_distance_to_normal(quantiles) < 0.02);

    auto rng = substream(4002, 0);
    std::vector<double> samples;
    for (int i = 0; i < 200; ++i) samples.push_back(-3.0 + 6.0 * rng.next_unit());
    double d = ks_distance_to_normal(samples);

    auto shuffled = samples;
    for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng.next() % i]);
    CHECK(ks_distance_to_normal(shuffled) == d);

    // brute-force sup over a fine t grid
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    double brute = 0.0;
    for (int i = 0; i <= 100000; ++i) {
        double t = -6.0 + 12.0 * i / 100000.0;
        double ecdf = static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), t) -
                                          sorted.begin()) /
                      static_cast<double>(sorted.size());
        brute = std::max(brute, std::abs(ecdf - normal_cdf(t)));
    }
    CHECK(d == doctest::Approx(brute).epsilon(0).scale(1).epsilon(1e-3));
}

TEST_CASE("block-sum grid values and floor") {
    auto v = nform_values(3);
    CHECK(v == std::vector<std::uint64_t>{2, 20, 104});
    CHECK(nform_floor(100) == 20);
    CHECK(nform_floor(104) == 104);
    CHECK_THROWS_AS(nform_floor(1), Error);

    // consecutive gaps are exactly (M+1)^4 + (M+1)
    auto grid = nform_values(40);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        std::uint64_t m1 = i + 2;
        CHECK(grid[i + 1] - grid[i] == m1 * m1 * m1 * m1 + m1);
    }

    // floor distance bound for assorted N up to 1e7
    auto rng = substream(4003, 0);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t n = 2 + rng.next() % 10000000;
        std::uint64_t fl = nform_floor(n);
        CHECK(fl <= n);
        std::size_t m = 0;
        while (grid[m] != fl) ++m;
        std::uint64_t m1 = m + 2;
        CHECK(n - fl <= m1 * m1 * m1 * m1 + m1);
    }
}

TEST_CASE("loglog guard") {
    CHECK(loglog_guarded(16.0) == doctest::Approx(std::log(std::log(16.0))).epsilon(1e-15));
    CHECK(loglog_guarded(2.0) == doctest::Approx(std::log(std::log(16.0))).epsilon(1e-15));
    CHECK(loglog_guarded(1e5) == doctest::Approx(std::log(std::log(1e5))).epsilon(1e-15));
}

TEST_CASE("lil scan matches from-scratch discrepancies at every grid point") {
    auto pts = seqgen::generate_iid(77, 2048);
    auto traj = lil_scan(pts, GridKind::dyadic, Variant::star);
    REQUIRE(!traj.rows.empty());
    double prev_max = 0.0;
    for (const auto& row : traj.rows) {
        seqgen::CertifiedPointList prefix;
        prefix.values.assign(pts.values.begin(), pts.values.begin() + row.n);
        prefix.radii.assign(row.n, 0.0);
        auto rep = disc::report(prefix);
        CHECK(row.d_star == doctest::Approx(rep.d_star).epsilon(1e-14));
        CHECK(row.d_extremal == doctest::Approx(rep.d_extremal).epsilon(1e-14));
        const double scale = std::sqrt(static_cast<double>(row.n)) /
                             std::sqrt(loglog_guarded(static_cast<double>(row.n)));
        CHECK(row.stat_star == doctest::Approx(scale * row.d_star).epsilon(1e-14));
        CHECK(row.running_max >= prev_max);
        CHECK(row.stat_star >= 0.0);
        prev_max = row.running_max;
    }
    CHECK_FALSE(traj.degenerate);
}

TEST_CASE("nform grid scan and degenerate orbit flag") {
    auto pts = seqgen::generate_iid(78, 3000);
    auto traj = lil_scan(pts, GridKind::nform, Variant::extremal);
    for (const auto& row : traj.rows) CHECK(nform_floor(row.n) == row.n);

    auto spec = seqgen::OrbitSpec::make(Dyadic::from_double(1.0), Dyadic::from_double(2.0),
                                        seqgen::ExponentRule::identity());
    auto zeros = seqgen::generate_power_orbit(spec, 64);
    auto ztraj = lil_scan(zeros, GridKind::dyadic, Variant::star);
    CHECK(ztraj.degenerate);
    CHECK(ztraj.rows.back().d_star == 1.0);
}

TEST_CASE("iid running max at desk scale stays in the documented envelope") {
    auto pts = seqgen::generate_iid(424242, 100000);
    auto traj = lil_scan(pts, GridKind::dyadic, Variant::star);
    double rm = traj.rows.back().running_max;
    CHECK(rm > 0.4);
    CHECK(rm < 1.4);
}

TEST_CASE("power orbit running max at desk scale stays finite and generic") {
    Dyadic x = seqgen::sample_x(1.1, 2.1, 90210, 53);
    auto spec = seqgen::OrbitSpec::make(Dyadic::from_double(1.0), std::move(x),
                                        seqgen::ExponentRule::identity());
    auto pts = seqgen::generate_power_orbit(spec, 100000);
    auto traj = lil_scan(pts, GridKind::dyadic, Variant::star);
    CHECK_FALSE(traj.degenerate);
    double rm = traj.rows.back().running_max;
    CHECK(rm > 0.3);
    CHECK(rm < 2.0);
}

TEST_CASE("clt sampling: determinism and thread independence") {
    CltParams par;
    par.xi = Dyadic::from_double(1.0);
    par.n_terms = 64;
    par.n_draws = 100;
    par.seed = 31337;

    auto f = periodic::PeriodicFunction::indicator(0.0, 0.5);
    auto rule = seqgen::ExponentRule::identity();

    par.threads = 1;
    auto a = clt_sample(f, rule, par);
    par.threads = 2;
    auto b = clt_sample(f, rule, par);
    CHECK(a.t_norm == b.t_norm);
    CHECK(a.x_hex == b.x_hex);
    CHECK(a.ks_norm == b.ks_norm);

    CHECK(a.ks_norm >= 0.0);
    CHECK(a.ks_norm <= 1.0);
    double mean = 0.0;
    for (double t : a.t_norm) mean += t;
    mean /= static_cast<double>(a.t_norm.size());
    CHECK(std::abs(mean) < 0.5);

    // raw normalization differs from the norm-scaled one by exactly ||f||
    for (std::size_t i = 0; i < a.t_norm.size(); ++i)
        CHECK(a.t_raw[i] == doctest::Approx(a.t_norm[i] * 0.5).epsilon(1e-12));
}

TEST_CASE("clt sampling rejects degenerate or inadmissible functions") {
    CltParams par;
    par.xi = Dyadic::from_double(1.0);
    par.n_terms = 16;
    par.n_draws = 100;
    auto rule = seqgen::ExponentRule::identity();
    auto loud = periodic::PeriodicFunction::trig({1.0, 0.5}, {0.0, 0.0}); // variation > 2
    CHECK_THROWS_AS(clt_sample(loud, rule, par), Error);

    par.n_draws = 10; // below the minimum
    auto f = periodic::PeriodicFunction::indicator(0.0, 0.5);
    CHECK_THROWS_AS(clt_sample(f, rule, par), Error);
}

TEST_CASE("reference constants to twelve digits") {
    auto c = reference_constants();
    CHECK(c.lil_power_orbit == doctest::Approx(0.707106781186547).epsilon(1e-12));
    CHECK(c.kesten == doctest::Approx(0.202642367284676).epsilon(1e-12));
    CHECK(c.fukuyama_base2 == doctest::Approx(1.018350154434631).epsilon(1e-12));
    CHECK(c.chung_smirnov == c.lil_power_orbit);
    CHECK(c.fukuyama_irrational == c.lil_power_orbit);
}
