#include "doctest.h"

#include <cmath>

#include "error.hpp"
#include "rng.hpp"
#include "seqgen.hpp"

using namespace fo;
using namespace fo::seqgen;

namespace {

OrbitSpec spec_of(double xi, double x, ExponentRule rule = ExponentRule::identity()) {
    return OrbitSpec::make(Dyadic::from_double(xi), Dyadic::from_double(x), std::move(rule));
}

} // namespace

TEST_CASE("required precision matches the bit-count formula") {
    const double eps = 0x1.0p-40;
    CHECK(required_precision(spec_of(1.0, 1.5), 1000, eps) == 585 + 2 + 40 + 64);
    CHECK(required_precision(spec_of(1.0, 2.0), 100, eps) == 100 + 2 + 40 + 64);
    // ceil(1e5 * log2(1.1)) = 13751
    CHECK(required_precision(spec_of(3.0, 1.1), 100000, eps) == 13751 + 3 + 40 + 64);
}

TEST_CASE("required precision rejects requests beyond the cap") {
    auto spec = spec_of(1.0, 2.0, ExponentRule::affine(1, 1000000));
    CHECK_THROWS_AS(required_precision(spec, 100000, 0x1.0p-40), Error);
}

TEST_CASE("power orbit: exactly dyadic cases come out exact") {
    auto pts = generate_power_orbit(spec_of(1.0, 1.5), 3);
    REQUIRE(pts.size() == 3);
    CHECK(pts.values[0] == 0.5);   // 1.5
    CHECK(pts.values[1] == 0.25);  // 2.25
    CHECK(pts.values[2] == 0.375); // 3.375
    CHECK(pts.radii[0] == 0.0);
    CHECK(pts.radii[1] == 0.0);
    CHECK(pts.radii[2] == 0.0);

    auto sq = generate_power_orbit(spec_of(1.0, 1.25), 2);
    CHECK(sq.values[0] == 0.25);
    CHECK(sq.values[1] == 0.5625); // 1.25^2 = 1.5625
}

TEST_CASE("power orbit: x = 2 gives the all-zero orbit") {
    auto pts = generate_power_orbit(spec_of(1.0, 2.0), 64);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(pts.values[i] == 0.0);
        CHECK(pts.radii[i] == 0.0);
    }
}

TEST_CASE("power orbit: per-point certification and cell containment") {
    auto rng = substream(7, 0);
    for (int trial = 0; trial < 5; ++trial) {
        Dyadic x = sample_x(1.1, 2.1, rng.next(), 53);
        auto spec = OrbitSpec::make(Dyadic::from_double(1.0), std::move(x),
                                    ExponentRule::identity());
        auto pts = generate_power_orbit(spec, 300);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(pts.values[i] >= 0.0);
            CHECK(pts.values[i] < 1.0);
            CHECK(pts.radii[i] < 0x1.0p-40);
            CHECK(pts.values[i] - pts.radii[i] >= 0.0);
            CHECK(pts.values[i] + pts.radii[i] < 1.0);
        }
    }
}

TEST_CASE("power orbit: doubled precision moves points at most by summed radii") {
    Dyadic x = sample_x(1.1, 2.1, 99, 53);
    auto spec = OrbitSpec::make(Dyadic::from_double(1.0), std::move(x),
                                ExponentRule::identity());
    auto a = generate_power_orbit(spec, 500);
    auto b = generate_power_orbit(spec, 500, kDefaultEps, 2 * a.precision_bits);
    REQUIRE(b.precision_bits >= 2 * a.precision_bits);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(std::abs(a.values[i] - b.values[i]) <= a.radii[i] + b.radii[i]);
}

TEST_CASE("power orbit: identical inputs give identical outputs") {
    auto spec = spec_of(1.0, 1.7, ExponentRule::affine(2, 3));
    auto a = generate_power_orbit(spec, 200);
    auto b = generate_power_orbit(spec, 200);
    CHECK(a.values == b.values);
    CHECK(a.radii == b.radii);
    CHECK(a.exponents == b.exponents);
}

TEST_CASE("exponent rules emit strictly increasing positive integers") {
    auto rng = substream(13, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::int64_t a = 1 + static_cast<std::int64_t>(rng.next() % 50);
        std::int64_t d = 1 + static_cast<std::int64_t>(rng.next() % 9);
        auto rule = ExponentRule::affine(a, d);
        std::int64_t prev = 0;
        for (std::uint64_t n = 1; n <= 100; ++n) {
            auto s = rule.exponent(n);
            CHECK(s > prev);
            prev = s;
        }
    }
    CHECK_THROWS_AS(ExponentRule::explicit_list({3, 3, 4}), Error);
    CHECK_THROWS_AS(ExponentRule::explicit_list({0, 1}), Error);
    CHECK_THROWS_AS(ExponentRule::affine(0, 1), Error);
}

TEST_CASE("linear orbit: dyadic and rational baselines") {
    auto p1 = generate_linear_orbit("0.5", ExponentRule::identity(), 4);
    CHECK(p1.values == std::vector<double>{0.5, 0.0, 0.5, 0.0});

    auto p2 = generate_linear_orbit("0.25", ExponentRule::explicit_list({2, 4, 8}), 3);
    CHECK(p2.values == std::vector<double>{0.5, 0.0, 0.0});

    auto dec = generate_linear_orbit("0.1", ExponentRule::identity(), 10);
    CHECK(dec.values[9] == 0.0); // frac(10 * 1/10) exactly
    CHECK(dec.values[4] == doctest::Approx(0.5).epsilon(1e-12));

    auto p3 = generate_linear_orbit("1/3", ExponentRule::identity(), 3);
    CHECK(p3.values[0] == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(p3.values[1] == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(p3.values[2] == 0.0); // frac(3 * 1/3) exactly
    for (double r : p3.radii) CHECK(r < 0x1.0p-40);
}

TEST_CASE("iid generator: determinism and crude uniformity") {
    auto a = generate_iid(42, 1000);
    auto b = generate_iid(42, 1000);
    CHECK(a.values == b.values);

    auto one = generate_iid(1, 1);
    CHECK(one.values[0] >= 0.0);
    CHECK(one.values[0] < 1.0);

    auto big = generate_iid(42, 10000);
    double mean = 0.0;
    for (double v : big.values) mean += v;
    mean /= static_cast<double>(big.size());
    CHECK(mean > 0.45);
    CHECK(mean < 0.55);
    for (double r : big.radii) CHECK(r == 0.0);
}

TEST_CASE("sample_x: dyadic, in range, reproducible") {
    auto x1 = sample_x(1.1, 2.1, 5, 53);
    auto x2 = sample_x(1.1, 2.1, 5, 53);
    CHECK(x1.to_hex_string() == x2.to_hex_string());
    CHECK(x1.to_double() > 1.1 - 1e-15);
    CHECK(x1.to_double() < 2.1);

    // hex round trip is exact
    auto parsed = Dyadic::parse(x1.to_hex_string());
    REQUIRE(parsed.has_value());
    CHECK(parsed->to_hex_string() == x1.to_hex_string());

    // boundary rule: draws at or below 1 are rejected, never returned
    for (std::uint64_t seed = 0; seed < 50; ++seed)
        CHECK(sample_x(1.0, 2.0, seed, 16).cmp(1.0) > 0);

    CHECK_THROWS_AS(sample_x(1.1, 2.1, 1, 8), Error);   // mantissa_bits < 16
    CHECK_THROWS_AS(sample_x(2.1, 1.1, 1, 53), Error);  // reversed interval
}

TEST_CASE("wide mantissa draws stay exact") {
    auto x = sample_x(1.1, 2.1, 17, 128);
    auto parsed = Dyadic::parse(x.to_hex_string());
    REQUIRE(parsed.has_value());
    CHECK(parsed->to_hex_string() == x.to_hex_string());
    auto spec = OrbitSpec::make(Dyadic::from_double(1.0), std::move(x),
                                ExponentRule::identity());
    auto pts = generate_power_orbit(spec, 50);
    for (double r : pts.radii) CHECK(r < 0x1.0p-40);
}
