#include "oscillatory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "error.hpp"

namespace fo::osc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct GaussRule {
    std::array<double, 15> x{};
    std::array<double, 15> w{};
};

// 15-point Gauss-Legendre rule on [-1,1], nodes by Newton iteration.
const GaussRule& gl15() {
    static const GaussRule rule = [] {
        GaussRule g{};
        const int n = 15;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (n + 0.5));
            double p1 = 0.0, p0 = 0.0;
            for (int it = 0; it < 64; ++it) {
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                double dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            g.x[i] = x;
            g.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return g;
    }();
    return rule;
}

struct Complex2 {
    double re = 0.0;
    double im = 0.0;
};

Complex2 gauss_panel(const PhaseSpec& ph, double a, double b) {
    const auto& g = gl15();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Complex2 s;
    for (int i = 0; i < 15; ++i) {
        const double t = c + h * g.x[i];
        const double w = kTwoPi * ph.cycles(t);
        s.re += g.w[i] * std::cos(w);
        s.im += g.w[i] * std::sin(w);
    }
    s.re *= h;
    s.im *= h;
    return s;
}

} // namespace

PhaseSpec PhaseSpec::single(std::uint32_t j, std::uint32_t n, double xi) {
    require(j >= 1 && n >= 1, FO_EINVAL, "j and n must be >= 1");
    require(xi > 0.0, FO_EINVAL, "xi must be > 0");
    PhaseSpec p;
    p.kind = Kind::single;
    p.j = j;
    p.n = n;
    p.xi = xi;
    return p;
}

PhaseSpec PhaseSpec::pair(std::uint32_t j, std::uint32_t k, std::uint32_t n, std::uint32_t m,
                          int sign, double xi) {
    require(j >= 1 && k >= 1 && n >= 1 && m >= 1, FO_EINVAL, "indices must be >= 1");
    require(sign == 1 || sign == -1, FO_EINVAL, "sign must be +-1");
    require(xi > 0.0, FO_EINVAL, "xi must be > 0");
    if (sign == -1) require(m < n, FO_EINVAL, "minus-sign pair needs m < n");
    PhaseSpec p;
    p.kind = Kind::pair;
    p.sign = sign;
    p.j = j;
    p.k = k;
    p.n = n;
    p.m = m;
    p.xi = xi;
    return p;
}

double PhaseSpec::cycles(double x) const {
    double v = kind == Kind::single
                   ? xi * j * std::pow(x, static_cast<double>(n))
                   : xi * (j * std::pow(x, static_cast<double>(n)) +
                           sign * static_cast<double>(k) * std::pow(x, static_cast<double>(m)));
    return negated ? -v : v;
}

double PhaseSpec::dcycles(double x) const {
    double v = kind == Kind::single
                   ? xi * j * n * std::pow(x, static_cast<double>(n) - 1.0)
                   : xi * (static_cast<double>(j) * n * std::pow(x, static_cast<double>(n) - 1.0) +
                           sign * static_cast<double>(k) * m *
                               std::pow(x, static_cast<double>(m) - 1.0));
    return negated ? -v : v;
}

double PhaseSpec::d2cycles(double x) const {
    auto term = [&](double c, std::uint32_t e) {
        return e < 2 ? 0.0 : c * e * (e - 1.0) * std::pow(x, static_cast<double>(e) - 2.0);
    };
    double v = kind == Kind::single
                   ? term(xi * j, n)
                   : term(xi * j, n) + sign * term(xi * k, m);
    return negated ? -v : v;
}

CertifiedIntegral integral(const PhaseSpec& phase, double alpha, double beta, double tol,
                           std::uint64_t node_budget) {
    require(alpha < beta, FO_EINVAL, "need alpha < beta");
    require(tol > 0.0 && tol <= 1e-3, FO_EINVAL, "tol must lie in (0, 1e-3]");

    struct Seg {
        double a, b;
        Complex2 coarse;
    };

    const double total = beta - alpha;
    const double min_width = total * 0x1.0p-48;
    CertifiedIntegral out;

    std::vector<Seg> stack;
    stack.push_back({alpha, beta, gauss_panel(phase, alpha, beta)});
    out.evaluations += 15;
    bool budget_ok = true;

    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        const double w = s.b - s.a;
        const double mid = 0.5 * (s.a + s.b);

        if (budget_ok && out.evaluations + 30 > node_budget) budget_ok = false;
        if (!budget_ok) {
            // settle for the coarse estimate; flag the result
            out.re += s.coarse.re;
            out.im += s.coarse.im;
            out.error_bound += std::abs(s.coarse.re) + std::abs(s.coarse.im) + w;
            continue;
        }

        Complex2 left = gauss_panel(phase, s.a, mid);
        Complex2 right = gauss_panel(phase, mid, s.b);
        out.evaluations += 30;
        const double err = std::abs(s.coarse.re - left.re - right.re) +
                           std::abs(s.coarse.im - left.im - right.im);

        // quarter-cycle control on the local phase span
        const double span = std::abs(phase.cycles(mid) - phase.cycles(s.a)) +
                            std::abs(phase.cycles(s.b) - phase.cycles(mid));
        const bool oscillatory = span > 0.25 && w > min_width;
        const bool converged = err <= tol * (w / total) * 0.5;

        if ((converged && !oscillatory) || w <= min_width) {
            out.re += left.re + right.re;
            out.im += left.im + right.im;
            out.error_bound += err;
        } else {
            stack.push_back({mid, s.b, right});
            stack.push_back({s.a, mid, left});
        }
    }

    out.abs_value = std::hypot(out.re, out.im);
    out.converged = budget_ok && out.error_bound <= tol;
    return out;
}

double single_phase_bound(std::uint32_t j, double xi, std::uint32_t n, double alpha) {
    require(j >= 1 && n >= 1, FO_EINVAL, "j and n must be >= 1");
    require(xi > 0.0, FO_EINVAL, "xi must be > 0");
    require(alpha > 1.0, FO_EINVAL, "alpha must be > 1");
    return 1.0 / (static_cast<double>(j) * xi * static_cast<double>(n) *
                  std::pow(alpha, static_cast<double>(n) - 1.0));
}

BoundCheck single_phase_check(const PhaseSpec& phase, double alpha, double beta, double tol) {
    require(phase.kind == PhaseSpec::Kind::single, FO_EINVAL, "single-phase check needs a single phase");
    BoundCheck c;
    c.bound = single_phase_bound(phase.j, phase.xi, phase.n, alpha);
    auto ig = integral(phase, alpha, beta, tol);
    require(ig.converged, FO_EBUDGET, "quadrature budget exhausted; achieved error " +
                                          std::to_string(ig.error_bound));
    c.integral_abs = std::abs(ig.re);
    c.error_bound = ig.error_bound;
    c.pass = c.integral_abs + c.error_bound <= c.bound + tol;
    return c;
}

double pair_phase_bound(double xi, std::uint32_t n, std::uint32_t m, double alpha) {
    require(n >= 1 && m >= 1 && n != m, FO_EINVAL, "need positive m != n");
    require(xi > 0.0, FO_EINVAL, "xi must be > 0");
    require(alpha > 1.0, FO_EINVAL, "alpha must be > 1");
    const double top = static_cast<double>(std::max(m, n));
    return 1.0 / (xi * top * std::pow(alpha, top - 1.0));
}

BoundCheck pair_phase_check(const PhaseSpec& phase, double alpha, double beta, double tol) {
    require(phase.kind == PhaseSpec::Kind::pair, FO_EINVAL, "pair-phase check needs a pair phase");
    require(phase.sign == +1, FO_EINVAL,
            "pair check covers the plus sign; minus-sign phases go through the partition");
    require(phase.n != phase.m, FO_EINVAL, "need m != n");
    BoundCheck c;
    c.bound = pair_phase_bound(phase.xi, phase.n, phase.m, alpha);
    auto ig = integral(phase, alpha, beta, tol);
    require(ig.converged, FO_EBUDGET, "quadrature budget exhausted; achieved error " +
                                          std::to_string(ig.error_bound));
    c.integral_abs = std::abs(ig.re);
    c.error_bound = ig.error_bound;
    c.pass = c.integral_abs + c.error_bound <= c.bound + tol;
    return c;
}

namespace {

struct Piece {
    double lo = 1.0, hi = 0.0;
    bool empty() const { return lo > hi; }
    double length() const { return empty() ? 0.0 : hi - lo; }
};

Piece clip(double lo, double hi, double a, double b) {
    Piece p;
    p.lo = std::max(lo, a);
    p.hi = std::min(hi, b);
    return p;
}

} // namespace

PartitionResult build_partition(std::uint32_t j, std::uint32_t k, std::uint32_t m,
                                std::uint32_t n, double xi, double eta, double a, double b) {
    require(m >= 1 && n >= 1 && m < n, FO_EINVAL, "need positive m < n");
    require(j >= 1 && k >= 1, FO_EINVAL, "need positive j, k");
    require(xi > 0.0, FO_EINVAL, "xi must be > 0");
    require(eta > 0.0, FO_EINVAL, "eta must be > 0");
    require(a > 1.0 && b > a, FO_EINVAL, "interval must satisfy 1 < A < B");

    PartitionResult r;
    r.j = j;
    r.k = k;
    r.m = m;
    r.n = n;
    r.xi = xi;
    r.eta = eta;
    r.a = a;
    r.b = b;

    const double inv = 1.0 / static_cast<double>(n - m);
    const double km = static_cast<double>(k) * m;
    const double jn = static_cast<double>(j) * n;
    r.x1 = std::pow(km / jn, inv);
    r.x2 = m == 1 ? 0.0
                  : std::pow(km * (m - 1.0) / (jn * (n - 1.0)), inv);

    r.band_lo = r.x1 * (1.0 - eta);
    r.band_hi = r.x1 * (1.0 + eta);

    // Pieces before removing the band: [A, x2], [x2, x1], [x1, B].
    // The band always reaches above x1, so each difference stays an interval.
    auto minus_band = [&](double lo, double hi) -> Piece {
        if (lo > hi) return Piece{};
        if (r.band_lo <= lo && r.band_hi >= hi) return Piece{};
        if (r.band_lo > hi || r.band_hi < lo) return clip(lo, hi, a, b);
        if (r.band_lo > lo) return clip(lo, std::min(hi, r.band_lo), a, b);
        return clip(std::max(lo, r.band_hi), hi, a, b);
    };

    Piece p1 = minus_band(a, r.x2);     // [A, x2] \ E
    Piece p2 = minus_band(r.x2, r.x1);  // [x2, x1] \ E
    Piece p3 = minus_band(r.x1, b);     // [x1, B] \ E

    r.i1_lo = p1.lo;
    r.i1_hi = p1.hi;
    r.i2_lo = p2.lo;
    r.i2_hi = p2.hi;
    r.i3_lo = p3.lo;
    r.i3_hi = p3.hi;

    double covered = p1.length() + p2.length() + p3.length();
    // overlap is at most shared endpoints, so lengths add up
    r.excluded_measure = std::max(0.0, (b - a) - covered);
    return r;
}

bool PartitionResult::contains(double alpha, double beta) const {
    auto inside = [&](double lo, double hi) { return lo <= hi && lo <= alpha && beta <= hi; };
    return inside(i1_lo, i1_hi) || inside(i2_lo, i2_hi) || inside(i3_lo, i3_hi);
}

double partition_bound(const PartitionResult& part, double alpha) {
    return 1.0 / (part.xi * part.eta * static_cast<double>(part.m) *
                  std::pow(alpha, static_cast<double>(part.m) - 1.0));
}

BoundCheck partition_check(const PartitionResult& part, double alpha, double beta, double tol) {
    require(alpha < beta, FO_EINVAL, "need alpha < beta");
    require(part.contains(alpha, beta), FO_EDOMAIN,
            "subinterval is not contained in a single partition piece");
    PhaseSpec phase = PhaseSpec::pair(part.j, part.k, part.n, part.m, -1, part.xi);
    BoundCheck c;
    c.bound = partition_bound(part, alpha);
    auto ig = integral(phase, alpha, beta, tol);
    require(ig.converged, FO_EBUDGET, "quadrature budget exhausted; achieved error " +
                                          std::to_string(ig.error_bound));
    c.integral_abs = std::abs(ig.re);
    c.error_bound = ig.error_bound;
    c.pass = c.integral_abs + c.error_bound <= c.bound + tol;
    return c;
}

} // namespace fo::osc
