#include "doctest.h"

#include <cmath>

#include "error.hpp"
#include "oscillatory.hpp"
#include "rng.hpp"

using namespace fo;
using namespace fo::osc;

TEST_CASE("full-period complex exponential integrates to zero") {
    auto ph = PhaseSpec::single(1, 1, 1.0); // cycles(x) = x
    auto ig = integral(ph, 0.0, 1.0, 1e-8);
    CHECK(ig.converged);
    CHECK(ig.abs_value <= 1e-8);
}

TEST_CASE("quadratic phase stays under the oscillation bound") {
    auto ph = PhaseSpec::single(1, 2, 1.0); // e^{2 pi i x^2}
    auto ig = integral(ph, 1.1, 2.1, 1e-7);
    CHECK(ig.converged);
    CHECK(ig.abs_value <= 1.0 / (2.0 * 1.1) + 1e-6);
}

TEST_CASE("negating the phase conjugates the integral") {
    auto ph = PhaseSpec::pair(2, 1, 3, 2, +1, 0.7);
    auto neg = ph;
    neg.negated = true;
    const double tol = 1e-8;
    auto a = integral(ph, 1.2, 1.9, tol);
    auto b = integral(neg, 1.2, 1.9, tol);
    CHECK(a.re == doctest::Approx(b.re).epsilon(0).scale(1).epsilon(2e-8));
    CHECK(a.im == doctest::Approx(-b.im).epsilon(0).scale(1).epsilon(2e-8));
}

TEST_CASE("single-phase bound values") {
    CHECK(single_phase_bound(1, 1.0, 2, 1.1) == doctest::Approx(1.0 / 2.2).epsilon(1e-15));
    CHECK(single_phase_bound(3, 2.0, 5, 1.5) ==
          doctest::Approx(1.0 / 151.875).epsilon(1e-15));
    CHECK_THROWS_AS(single_phase_bound(1, 1.0, 2, 0.9), Error);
}

TEST_CASE("single-phase checks pass on random cases") {
    auto rng = substream(3001, 0);
    for (int trial = 0; trial < 20; ++trial) {
        double alpha = 1.1 + 0.8 * rng.next_unit();
        double beta = alpha + 0.05 + (2.1 - alpha - 0.05) * rng.next_unit();
        double xi = 0.5 + 1.5 * rng.next_unit();
        std::uint32_t j = 1 + rng.next() % 4;
        std::uint32_t n = 1 + rng.next() % 6;
        auto ph = PhaseSpec::single(j, n, xi);
        auto check = single_phase_check(ph, alpha, beta, 1e-6);
        CHECK(check.pass);
        CHECK(check.integral_abs <= check.bound + 1e-6);
    }
}

TEST_CASE("pair-phase bound and checks") {
    CHECK(pair_phase_bound(1.0, 3, 2, 1.1) ==
          doctest::Approx(1.0 / (3.0 * 1.21)).epsilon(1e-14));
    CHECK(pair_phase_bound(1.0, 10, 2, 1.5) ==
          doctest::Approx(1.0 / (10.0 * std::pow(1.5, 9))).epsilon(1e-13));

    auto ph = PhaseSpec::pair(1, 1, 3, 2, +1, 1.0);
    auto check = pair_phase_check(ph, 1.1, 2.1, 1e-6);
    CHECK(check.pass);
    CHECK(check.bound == doctest::Approx(0.275482).epsilon(1e-5));

    auto rng = substream(3002, 0);
    for (int trial = 0; trial < 20; ++trial) {
        double alpha = 1.1 + 0.7 * rng.next_unit();
        double beta = alpha + 0.05 + (2.1 - alpha - 0.05) * rng.next_unit();
        double xi = 0.5 + rng.next_unit();
        std::uint32_t n = 1 + rng.next() % 6;
        std::uint32_t m = 1 + rng.next() % 6;
        if (m == n) continue;
        auto p = PhaseSpec::pair(1 + rng.next() % 4, 1 + rng.next() % 4, n, m, +1, xi);
        CHECK(pair_phase_check(p, alpha, beta, 1e-6).pass);
    }

    // minus-sign pairs are routed through the partition machinery
    auto minus = PhaseSpec::pair(1, 1, 3, 2, -1, 1.0);
    CHECK_THROWS_AS(pair_phase_check(minus, 1.1, 2.1, 1e-6), Error);
}

TEST_CASE("partition closed forms") {
    auto p1 = build_partition(1, 3, 1, 2, 1.0, 0.01, 1.1, 2.1);
    CHECK(p1.x1 == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(p1.x2 == 0.0);

    auto p2 = build_partition(1, 1, 2, 3, 1.0, 0.01, 1.1, 2.1);
    CHECK(p2.x1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(p2.x2 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // both roots below A: the third piece covers the whole interval
    CHECK(p2.i3_lo == doctest::Approx(1.1).epsilon(1e-15));
    CHECK(p2.i3_hi == doctest::Approx(2.1).epsilon(1e-15));
    CHECK(p2.excluded_measure == 0.0);

    auto p3 = build_partition(3, 7, 2, 5, 1.0, 0.01, 1.1, 2.1);
    CHECK(p3.x1 == doctest::Approx(std::pow(14.0 / 15.0, 1.0 / 3.0)).epsilon(1e-15));
    double covered = 0.0;
    auto len = [](double lo, double hi) { return lo <= hi ? hi - lo : 0.0; };
    covered = len(p3.i1_lo, p3.i1_hi) + len(p3.i2_lo, p3.i2_hi) + len(p3.i3_lo, p3.i3_hi);
    CHECK(covered >= (2.1 - 1.1) - 2.0 * 2.1 * 0.01);
}

TEST_CASE("partition invariants on random parameters") {
    auto rng = substream(3003, 0);
    const double A = 1.1, B = 2.1;
    for (int trial = 0; trial < 40; ++trial) {
        std::uint32_t m = 1 + rng.next() % 5;
        std::uint32_t n = m + 1 + rng.next() % 4;
        std::uint32_t j = 1 + rng.next() % 8;
        std::uint32_t k = 1 + rng.next() % 8;
        double xi = 0.5 + rng.next_unit();
        double eta = 0.002 + 0.1 * rng.next_unit();
        auto part = build_partition(j, k, m, n, xi, eta, A, B);

        CHECK(part.excluded_measure <= 2.0 * B * eta + 1e-12);
        if (m > 1) CHECK(part.x2 < part.x1);

        // derivative root: j n x1^{n-1} = k m x1^{m-1}
        double up = static_cast<double>(j) * n * std::pow(part.x1, n - 1.0);
        double dn = static_cast<double>(k) * m * std::pow(part.x1, m - 1.0);
        CHECK(std::abs(up - dn) <= 1e-10 * (up + dn));

        // ordering of nonempty pieces
        auto nonempty = [](double lo, double hi) { return lo <= hi; };
        if (nonempty(part.i1_lo, part.i1_hi) && nonempty(part.i2_lo, part.i2_hi))
            CHECK(part.i1_hi <= part.i2_lo + 1e-15);
        if (nonempty(part.i2_lo, part.i2_hi) && nonempty(part.i3_lo, part.i3_hi))
            CHECK(part.i2_hi <= part.i3_lo + 1e-15);

        // first and second phase derivatives keep one sign per piece
        auto phase = PhaseSpec::pair(j, k, n, m, -1, xi);
        auto check_piece = [&](double lo, double hi) {
            if (lo > hi || hi - lo < 1e-9) return;
            int sign = phase.dcycles(lo + (hi - lo) * 1e-3) > 0 ? 1 : -1;
            int sign2 = 0;
            for (int i = 1; i < 1000; ++i) {
                double t = lo + (hi - lo) * i / 1000.0;
                CHECK(phase.dcycles(t) * sign > 0.0);
                double dd = phase.d2cycles(t);
                double scale = xi * (static_cast<double>(j) * n * (n - 1.0) * std::pow(t, n - 2.0) +
                                     static_cast<double>(k) * m * (m - 1.0) * std::pow(t, m - 2.0));
                if (std::abs(dd) <= 1e-9 * scale) continue; // cancellation near the root
                if (sign2 == 0) sign2 = dd > 0 ? 1 : -1;
                CHECK(dd * sign2 > 0.0);
            }
        };
        check_piece(part.i1_lo, part.i1_hi);
        check_piece(part.i2_lo, part.i2_hi);
        check_piece(part.i3_lo, part.i3_hi);
    }
}

TEST_CASE("monotone-derivative panels obey the reciprocal bound") {
    auto rng = substream(3004, 0);
    for (int trial = 0; trial < 15; ++trial) {
        std::uint32_t m = 1 + rng.next() % 4;
        std::uint32_t n = m + 1 + rng.next() % 3;
        double xi = 0.5 + rng.next_unit();
        auto part = build_partition(1 + rng.next() % 5, 1 + rng.next() % 5, m, n, xi, 0.02,
                                    1.1, 2.1);
        auto phase = PhaseSpec::pair(part.j, part.k, part.n, part.m, -1, part.xi);
        auto probe = [&](double lo, double hi) {
            if (lo > hi || hi - lo < 1e-6) return;
            double alpha = lo + (hi - lo) * 0.25;
            double beta = lo + (hi - lo) * 0.75;
            double gamma = std::min(std::abs(phase.dcycles(alpha)), std::abs(phase.dcycles(beta)));
            if (gamma <= 0.0) return;
            auto ig = integral(phase, alpha, beta, 1e-7);
            CHECK(ig.converged);
            CHECK(ig.abs_value <= 1.0 / gamma + 1e-6);
        };
        probe(part.i1_lo, part.i1_hi);
        probe(part.i2_lo, part.i2_hi);
        probe(part.i3_lo, part.i3_hi);
    }
}

TEST_CASE("partition bound checks and containment precondition") {
    auto part = build_partition(1, 3, 1, 2, 1.0, 0.05, 1.1, 2.1);
    // x1 = 1.5; [1.6, 2.0] sits inside the third piece
    auto check = partition_check(part, 1.6, 2.0, 1e-6);
    CHECK(check.pass);
    CHECK(check.bound == doctest::Approx(20.0).epsilon(1e-12));

    // a subinterval straddling the excluded band is a precondition violation
    bool domain_error = false;
    try {
        partition_check(part, 1.4, 1.6, 1e-6);
    } catch (const Error& e) {
        domain_error = e.code() == FO_EDOMAIN;
    }
    CHECK(domain_error);

    // tighter bound with larger m
    auto part4 = build_partition(1, 1, 4, 5, 1.0, 0.1, 1.1, 2.1);
    double b15 = partition_bound(part4, 1.5);
    CHECK(b15 == doctest::Approx(1.0 / (0.1 * 4.0 * std::pow(1.5, 3))).epsilon(1e-13));
    auto rng = substream(3005, 0);
    for (int i = 0; i < 10; ++i) {
        double alpha = 1.5 + 0.4 * rng.next_unit();
        double beta = alpha + 0.01 + (2.1 - alpha - 0.01) * rng.next_unit();
        auto c = partition_check(part4, alpha, beta, 1e-6);
        CHECK(c.pass);
    }
}

TEST_CASE("overly oscillatory phases exhaust the budget with a report") {
    auto ph = PhaseSpec::single(100, 12, 3.0);
    auto ig = integral(ph, 1.1, 2.1, 1e-8, 1 << 12);
    CHECK_FALSE(ig.converged);
    CHECK(ig.error_bound > 0.0);
}
