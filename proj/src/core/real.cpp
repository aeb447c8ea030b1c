#include "real.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "error.hpp"

namespace fo {

Dyadic Dyadic::from_double(double d) {
    Real r(53);
    mpfr_set_d(r.get(), d, MPFR_RNDN); // exact: doubles are 53-bit dyadics
    return Dyadic(std::move(r));
}

std::optional<Dyadic> Dyadic::parse(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;
    std::string s(text);

    bool hex = s.find("0x") != std::string::npos || s.find("0X") != std::string::npos;
    if (hex) {
        // 4 bits per hex digit plus slack; parse must come back exact.
        mpfr_prec_t prec = static_cast<mpfr_prec_t>(4 * s.size() + 16);
        Real r(prec);
        char* end = nullptr;
        int inexact = mpfr_strtofr(r.get(), s.c_str(), &end, 16, MPFR_RNDN);
        if (end == s.c_str() || *end != '\0') return std::nullopt;
        if (inexact != 0 || !mpfr_number_p(r.get())) return std::nullopt;
        return Dyadic(std::move(r));
    }

    char* end = nullptr;
    double d = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') return std::nullopt;
    if (!std::isfinite(d)) return std::nullopt;
    return from_double(d);
}

Dyadic Dyadic::affine_grid_point_wide(double a, double b, std::uint64_t k_hi,
                                      std::uint64_t k_lo, unsigned mantissa_bits) {
    require(mantissa_bits >= 1 && mantissa_bits <= 128, FO_EINVAL,
            "mantissa_bits out of range [1,128]");
    // Worst-case exact width: double exponent span (~2100 bits) plus the
    // k mantissa; generous headroom keeps every step exact.
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(mantissa_bits) + 4500;
    Real r(prec), step(prec), kk(prec);
    int t = 0;
    t |= mpfr_set_d(step.get(), b, MPFR_RNDN);
    t |= mpfr_sub_d(step.get(), step.get(), a, MPFR_RNDN);
    t |= mpfr_set_ui(kk.get(), static_cast<unsigned long>(k_hi), MPFR_RNDN);
    t |= mpfr_mul_2ui(kk.get(), kk.get(), 64, MPFR_RNDN);
    Real klow(prec);
    t |= mpfr_set_ui(klow.get(), static_cast<unsigned long>(k_lo), MPFR_RNDN);
    t |= mpfr_add(kk.get(), kk.get(), klow.get(), MPFR_RNDN);
    t |= mpfr_div_2ui(kk.get(), kk.get(), mantissa_bits, MPFR_RNDN);
    t |= mpfr_mul(step.get(), step.get(), kk.get(), MPFR_RNDN);
    t |= mpfr_add_d(r.get(), step.get(), a, MPFR_RNDN);
    require(t == 0, FO_EPRECISION, "dyadic grid point construction was inexact");

    // shrink-wrap so mantissa_bits() reflects the actual mantissa
    mpfr_prec_t tight_bits = mpfr_zero_p(r.get()) ? 2 : std::max<mpfr_prec_t>(mpfr_min_prec(r.get()), 2);
    Real tight(tight_bits);
    int inexact = mpfr_set(tight.get(), r.get(), MPFR_RNDN);
    require(inexact == 0, FO_EPRECISION, "dyadic shrink-wrap was inexact");
    return Dyadic(std::move(tight));
}

std::string Dyadic::to_hex_string() const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%Ra", value_.get()) < 0) fail(FO_EPRECISION, "hex format failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

double Dyadic::log2_upper() const {
    require(positive(), FO_EINVAL, "log2 of non-positive value");
    Real l(64);
    mpfr_log2(l.get(), value_.get(), MPFR_RNDU);
    return l.to_double(MPFR_RNDU);
}

} // namespace fo
