#pragma once

#include <cstdio> // before mpfr.h so the formatted-output interface is visible
#include <mpfr.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace fo {

// Thin RAII wrapper around mpfr_t. Precision is fixed per instance;
// rounding is chosen per operation by the caller.
class Real {
public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    Real() : Real(64) {}
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

private:
    mpfr_t v_;
};

// Exact dyadic rational m * 2^e, carried as an mpfr value whose precision
// covers the mantissa exactly. Construction never rounds.
class Dyadic {
public:
    Dyadic() : value_(2) { mpfr_set_zero(value_.get(), 1); }

    static Dyadic from_double(double d);

    // Decimal strings go to the nearest double; hex-float strings ("0x1.8p+0")
    // are taken exactly. Returns nullopt on unparsable or non-finite input.
    static std::optional<Dyadic> parse(std::string_view text);

    // Exact a + (b-a) * k / 2^mantissa_bits with double a, b and
    // k = k_hi * 2^64 + k_lo (mantissa_bits up to 128).
    static Dyadic affine_grid_point_wide(double a, double b, std::uint64_t k_hi,
                                         std::uint64_t k_lo, unsigned mantissa_bits);

    const Real& real() const { return value_; }
    mpfr_srcptr get() const { return value_.get(); }

    double to_double() const { return value_.to_double(); }
    std::string to_hex_string() const; // exact round-trip via parse()

    bool positive() const { return mpfr_sgn(value_.get()) > 0; }
    int cmp(double d) const { return mpfr_cmp_d(value_.get(), d); }

    // Tight upper bound on log2(value); requires value > 0.
    double log2_upper() const;

    mpfr_prec_t mantissa_bits() const { return value_.prec(); }

private:
    explicit Dyadic(Real v) : value_(std::move(v)) {}
    Real value_;
};

} // namespace fo
