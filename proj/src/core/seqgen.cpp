#include "seqgen.hpp"

#include <gmp.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>

#include "error.hpp"
#include "rng.hpp"

namespace fo::seqgen {

ExponentRule ExponentRule::identity() {
    ExponentRule r;
    r.kind_ = Kind::identity;
    return r;
}

ExponentRule ExponentRule::affine(std::int64_t a, std::int64_t d) {
    require(a >= 1 && d >= 1, FO_EINVAL, "affine rule needs a >= 1 and d >= 1");
    ExponentRule r;
    r.kind_ = Kind::affine;
    r.a_ = a;
    r.d_ = d;
    return r;
}

ExponentRule ExponentRule::explicit_list(std::vector<std::int64_t> exponents) {
    require(!exponents.empty(), FO_EINVAL, "explicit rule needs at least one exponent");
    std::int64_t prev = 0;
    for (std::int64_t s : exponents) {
        require(s >= 1, FO_EINVAL, "exponents must be positive");
        require(s > prev, FO_EINVAL, "exponents must be strictly increasing");
        prev = s;
    }
    ExponentRule r;
    r.kind_ = Kind::explicit_list;
    r.list_ = std::move(exponents);
    return r;
}

std::int64_t ExponentRule::exponent(std::uint64_t n) const {
    require(n >= 1, FO_EINVAL, "exponent index is 1-based");
    switch (kind_) {
    case Kind::identity:
        return static_cast<std::int64_t>(n);
    case Kind::affine: {
        std::int64_t s = a_ + static_cast<std::int64_t>(n - 1) * d_;
        require(s > 0, FO_EINVAL, "affine exponent overflow");
        return s;
    }
    case Kind::explicit_list:
        require(n <= list_.size(), FO_EINVAL, "explicit rule exhausted");
        return list_[n - 1];
    }
    fail(FO_EINVAL, "bad rule kind");
}

std::uint64_t ExponentRule::max_points() const {
    return kind_ == Kind::explicit_list ? list_.size() : UINT64_MAX;
}

OrbitSpec OrbitSpec::make(Dyadic xi, Dyadic x, ExponentRule rule,
                          double interval_a, double interval_b) {
    require(xi.positive(), FO_EINVAL, "xi must be > 0");
    require(x.cmp(1.0) > 0, FO_EINVAL, "x must be > 1");
    require(interval_a > 1.0 && interval_b > interval_a, FO_EINVAL,
            "interval must satisfy 1 < A < B");
    OrbitSpec s;
    s.xi = std::move(xi);
    s.x = std::move(x);
    s.rule = std::move(rule);
    s.interval_a = interval_a;
    s.interval_b = interval_b;
    return s;
}

double CertifiedPointList::max_radius() const {
    double m = 0.0;
    for (double r : radii) m = std::max(m, r);
    return m;
}

namespace {

void check_eps(double eps) {
    require(eps > 0.0 && eps <= 0x1.0p-10, FO_EINVAL, "eps must lie in (0, 2^-10]");
}

std::uint64_t ceil_log2_inv(double eps) {
    return static_cast<std::uint64_t>(std::ceil(std::log2(1.0 / eps)));
}

// One certified point from an enclosure [lo, hi] of xi*x^{s}: fractional
// part plus a radius covering both the enclosure width and the final
// double rounding. nullopt asks the caller to retry at higher precision.
struct CertifiedValue {
    double value;
    double radius;
};

std::optional<CertifiedValue> certify_frac(mpfr_srcptr lo, mpfr_srcptr hi, double eps,
                                           mpfr_prec_t prec) {
    Real cell(prec), frac_lo(prec), frac_hi(prec), tmp(prec);
    mpfr_floor(cell.get(), lo);
    mpfr_add_ui(tmp.get(), cell.get(), 1, MPFR_RNDU);
    if (mpfr_cmp(hi, tmp.get()) >= 0) return std::nullopt; // straddles an integer

    mpfr_sub(frac_lo.get(), lo, cell.get(), MPFR_RNDD);
    mpfr_sub(frac_hi.get(), hi, cell.get(), MPFR_RNDU);
    if (mpfr_sgn(frac_lo.get()) < 0) mpfr_set_zero(frac_lo.get(), 1);

    mpfr_add(tmp.get(), frac_lo.get(), frac_hi.get(), MPFR_RNDN);
    mpfr_div_2ui(tmp.get(), tmp.get(), 1, MPFR_RNDN);
    double value = mpfr_get_d(tmp.get(), MPFR_RNDN);

    // distance from the reported double to both enclosure ends, rounded up
    mpfr_d_sub(tmp.get(), value, frac_lo.get(), MPFR_RNDU);
    double r1 = mpfr_get_d(tmp.get(), MPFR_RNDU);
    mpfr_sub_d(tmp.get(), frac_hi.get(), value, MPFR_RNDU);
    double r2 = mpfr_get_d(tmp.get(), MPFR_RNDU);
    double radius = std::max({r1, r2, 0.0});

    if (radius >= eps) return std::nullopt;
    if (value < 0.0 || value >= 1.0) return std::nullopt;
    if (value - radius < 0.0 && radius > 0.0) return std::nullopt; // touching 0
    if (value + radius >= 1.0) return std::nullopt;                // touching 1
    return CertifiedValue{value, radius};
}

// x^g enclosures per distinct gap, at working precision.
class PowCache {
public:
    PowCache(const Dyadic& x, mpfr_prec_t prec) : x_(x), prec_(prec) {}

    const std::pair<Real, Real>& get(std::uint64_t g) {
        auto it = cache_.find(g);
        if (it != cache_.end()) return it->second;
        Real lo(prec_), hi(prec_);
        mpfr_pow_ui(lo.get(), x_.get(), static_cast<unsigned long>(g), MPFR_RNDD);
        mpfr_pow_ui(hi.get(), x_.get(), static_cast<unsigned long>(g), MPFR_RNDU);
        auto [pos, ignored] = cache_.emplace(g, std::make_pair(std::move(lo), std::move(hi)));
        return pos->second;
    }

private:
    const Dyadic& x_;
    mpfr_prec_t prec_;
    std::map<std::uint64_t, std::pair<Real, Real>> cache_;
};

bool try_power_orbit(const OrbitSpec& spec, std::uint64_t n_points, double eps,
                     mpfr_prec_t prec, CertifiedPointList& out, std::uint64_t& bad_index) {
    out.values.clear();
    out.radii.clear();
    out.exponents.clear();
    out.values.reserve(n_points);
    out.radii.reserve(n_points);
    out.exponents.reserve(n_points);
    out.precision_bits = static_cast<std::uint64_t>(prec);

    Real lo(prec), hi(prec);
    mpfr_set(lo.get(), spec.xi.get(), MPFR_RNDD);
    mpfr_set(hi.get(), spec.xi.get(), MPFR_RNDU);

    PowCache pows(spec.x, prec);
    std::int64_t prev = 0;
    for (std::uint64_t n = 1; n <= n_points; ++n) {
        std::int64_t s = spec.rule.exponent(n);
        auto& [pg_lo, pg_hi] = pows.get(static_cast<std::uint64_t>(s - prev));
        prev = s;
        mpfr_mul(lo.get(), lo.get(), pg_lo.get(), MPFR_RNDD);
        mpfr_mul(hi.get(), hi.get(), pg_hi.get(), MPFR_RNDU);

        auto cv = certify_frac(lo.get(), hi.get(), eps, prec);
        if (!cv) {
            bad_index = n;
            return false;
        }
        out.values.push_back(cv->value);
        out.radii.push_back(cv->radius);
        out.exponents.push_back(s);
    }
    return true;
}

} // namespace

std::uint64_t required_precision(const OrbitSpec& spec, std::uint64_t n_points, double eps) {
    check_eps(eps);
    require(n_points >= 1, FO_EINVAL, "n_points must be >= 1");
    std::int64_t s_max = spec.rule.exponent(n_points);

    Real t(64);
    mpfr_log2(t.get(), spec.x.get(), MPFR_RNDU);
    mpfr_mul_si(t.get(), t.get(), s_max, MPFR_RNDU);
    mpfr_ceil(t.get(), t.get());
    double mag = t.to_double(MPFR_RNDU);
    require(mag < static_cast<double>(kPrecisionCapBits), FO_EPRECISION,
            "magnitude term exceeds the precision cap");

    Real u(std::max<mpfr_prec_t>(spec.xi.mantissa_bits() + 4, 64));
    mpfr_add_ui(u.get(), spec.xi.get(), 2, MPFR_RNDU);
    mpfr_log2(u.get(), u.get(), MPFR_RNDU);
    mpfr_ceil(u.get(), u.get());

    std::uint64_t bits = static_cast<std::uint64_t>(mag) +
                         static_cast<std::uint64_t>(u.to_double(MPFR_RNDU)) +
                         ceil_log2_inv(eps) + 64;
    require(bits <= kPrecisionCapBits, FO_EPRECISION,
            "required precision " + std::to_string(bits) + " exceeds cap 2^24 bits");
    return bits;
}

CertifiedPointList generate_power_orbit(const OrbitSpec& spec, std::uint64_t n_points,
                                        double eps, std::uint64_t min_precision_bits) {
    check_eps(eps);
    require(n_points >= 1, FO_EINVAL, "n_points must be >= 1");
    require(n_points <= spec.rule.max_points(), FO_EINVAL,
            "explicit rule provides fewer exponents than requested");

    std::uint64_t prec = required_precision(spec, n_points, eps);
    prec = std::max<std::uint64_t>(prec, static_cast<std::uint64_t>(spec.xi.mantissa_bits()) + 64);
    prec = std::max<std::uint64_t>(prec, static_cast<std::uint64_t>(spec.x.mantissa_bits()) + 64);
    prec = std::max(prec, min_precision_bits);

    CertifiedPointList out;
    std::uint64_t bad_index = 0;
    for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
        require(prec <= kPrecisionCapBits, FO_EPRECISION,
                "certification needs precision beyond the 2^24-bit cap");
        if (try_power_orbit(spec, n_points, eps, static_cast<mpfr_prec_t>(prec), out, bad_index))
            return out;
        prec *= 2;
    }
    fail(FO_ERETRY, "certification failed after " + std::to_string(kMaxRetries) +
                        " precision doublings at point index " + std::to_string(bad_index));
}

namespace {

class Rational {
public:
    Rational() { mpq_init(q_); }
    ~Rational() { mpq_clear(q_); }
    Rational(const Rational&) = delete;
    Rational& operator=(const Rational&) = delete;
    mpq_ptr get() { return q_; }
    mpq_srcptr get() const { return q_; }

private:
    mpq_t q_;
};

// Exact rational from "p/q", decimal ("1.25", "3e-2") or hex-float text.
bool parse_rational(const std::string& text, Rational& out) {
    if (text.empty()) return false;
    if (text.find('/') != std::string::npos) {
        if (mpq_set_str(out.get(), text.c_str(), 10) != 0) return false;
        if (mpz_sgn(mpq_denref(out.get())) == 0) return false;
        mpq_canonicalize(out.get());
        return true;
    }

    std::string s = text;
    bool neg = false;
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
    int base = 10;
    char exp_mark = 'e';
    int exp_base = 10;
    if (s.compare(pos, 2, "0x") == 0 || s.compare(pos, 2, "0X") == 0) {
        base = 16;
        exp_mark = 'p';
        exp_base = 2;
        pos += 2;
    }

    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    long exponent = 0;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c == '.') {
            if (seen_dot) return false;
            seen_dot = true;
        } else if ((base == 10 && (c == 'e' || c == 'E')) ||
                   (base == 16 && (c == 'p' || c == 'P'))) {
            char* end = nullptr;
            exponent = std::strtol(s.c_str() + pos + 1, &end, 10);
            if (end == s.c_str() + pos + 1 || *end != '\0') return false;
            pos = s.size();
            break;
        } else if ((base == 10 && c >= '0' && c <= '9') ||
                   (base == 16 && std::isxdigit(static_cast<unsigned char>(c)))) {
            digits.push_back(c);
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else {
            return false;
        }
    }
    if (!seen_digit) return false;
    (void)exp_mark;

    mpz_t num, scale;
    mpz_init(num);
    mpz_init(scale);
    if (mpz_set_str(num, digits.c_str(), base) != 0) {
        mpz_clear(num);
        mpz_clear(scale);
        return false;
    }
    // value = num * B^exponent / B^(digit_scale * frac_digits)
    long digit_scale = base == 10 ? 1 : 4; // hex: one digit = 4 bits of exp_base 2
    long down = digit_scale * frac_digits - exponent;
    mpq_set_z(out.get(), num);
    mpz_ui_pow_ui(scale, static_cast<unsigned long>(exp_base), static_cast<unsigned long>(std::labs(down)));
    if (down > 0) {
        mpz_set(mpq_denref(out.get()), scale);
    } else if (down < 0) {
        mpz_mul(mpq_numref(out.get()), mpq_numref(out.get()), scale);
    }
    mpq_canonicalize(out.get());
    if (neg) mpq_neg(out.get(), out.get());
    mpz_clear(num);
    mpz_clear(scale);
    return true;
}

// Certified double for an exact rational in [0,1): value plus radius
// covering the conversion error.
CertifiedValue certify_unit_rational(mpq_srcptr frac) {
    for (mpfr_prec_t prec = 128; prec <= 1 << 16; prec *= 2) {
        Real lo(prec), hi(prec);
        mpfr_set_q(lo.get(), frac, MPFR_RNDD);
        mpfr_set_q(hi.get(), frac, MPFR_RNDU);
        auto cv = certify_frac(lo.get(), hi.get(), kDefaultEps, prec);
        if (cv) return *cv;
    }
    fail(FO_ERETRY, "unit rational conversion failed to certify");
}

} // namespace

CertifiedPointList generate_linear_orbit(const std::string& x_text, const ExponentRule& rule,
                                         std::uint64_t n_points) {
    require(n_points >= 1, FO_EINVAL, "n_points must be >= 1");
    require(n_points <= rule.max_points(), FO_EINVAL,
            "explicit rule provides fewer exponents than requested");

    Rational x;
    require(parse_rational(x_text, x), FO_EINVAL, "cannot parse x value '" + x_text + "'");
    require(mpq_sgn(x.get()) > 0, FO_EINVAL, "x must be > 0");

    CertifiedPointList out;
    out.values.reserve(n_points);
    out.radii.reserve(n_points);
    out.exponents.reserve(n_points);
    out.precision_bits = 128;

    Rational y;
    mpz_t fl;
    mpz_init(fl);
    for (std::uint64_t n = 1; n <= n_points; ++n) {
        std::int64_t s = rule.exponent(n);
        mpq_set_si(y.get(), s, 1);
        mpq_mul(y.get(), y.get(), x.get());
        mpz_fdiv_q(fl, mpq_numref(y.get()), mpq_denref(y.get()));
        mpz_submul(mpq_numref(y.get()), fl, mpq_denref(y.get())); // y -= floor(y)
        mpq_canonicalize(y.get());
        auto cv = certify_unit_rational(y.get());
        out.values.push_back(cv.value);
        out.radii.push_back(cv.radius);
        out.exponents.push_back(s);
    }
    mpz_clear(fl);
    return out;
}

CertifiedPointList generate_iid(std::uint64_t seed, std::uint64_t n_points) {
    require(n_points >= 1, FO_EINVAL, "n_points must be >= 1");
    CertifiedPointList out;
    out.values.reserve(n_points);
    out.radii.assign(n_points, 0.0);
    out.exponents.reserve(n_points);
    out.precision_bits = 53;
    SplitMix64 rng(seed);
    for (std::uint64_t n = 1; n <= n_points; ++n) {
        out.values.push_back(rng.next_unit());
        out.exponents.push_back(static_cast<std::int64_t>(n));
    }
    return out;
}

Dyadic sample_x(double a, double b, std::uint64_t seed, unsigned mantissa_bits) {
    require(mantissa_bits >= 16 && mantissa_bits <= 128, FO_EINVAL,
            "mantissa_bits must lie in [16,128]");
    require(a >= 1.0 && b > a, FO_EINVAL, "interval must satisfy 1 <= A < B");
    SplitMix64 rng(seed);
    for (int tries = 0; tries < 128; ++tries) {
        std::uint64_t k_hi = 0, k_lo = 0;
        if (mantissa_bits <= 64) {
            k_lo = rng.next_bits(mantissa_bits);
        } else {
            k_hi = rng.next_bits(mantissa_bits - 64);
            k_lo = rng.next();
        }
        Dyadic x = Dyadic::affine_grid_point_wide(a, b, k_hi, k_lo, mantissa_bits);
        if (x.cmp(1.0) > 0) return x;
    }
    fail(FO_EINVAL, "sample_x could not draw x > 1 from the given interval");
}

} // namespace fo::seqgen
