#include "discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "error.hpp"

namespace fo::disc {

namespace {

std::vector<double> sorted_values(const seqgen::CertifiedPointList& points) {
    require(!points.values.empty(), FO_EINVAL, "point list is empty");
    std::vector<double> v(points.values);
    std::sort(v.begin(), v.end());
    return v;
}

// D+ = max_i (i/N - x_(i)), D- = max_i (x_(i) - (i-1)/N); both >= 0
// since the i = argmax candidates include the empty-interval cases.
struct TwoSided {
    double d_plus = 0.0;
    double d_minus = 0.0;
};

TwoSided two_sided(const std::vector<double>& sorted) {
    const double n = static_cast<double>(sorted.size());
    TwoSided t;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double hi = static_cast<double>(i + 1) / n - sorted[i];
        const double lo = sorted[i] - static_cast<double>(i) / n;
        t.d_plus = std::max(t.d_plus, hi);
        t.d_minus = std::max(t.d_minus, lo);
    }
    return t;
}

} // namespace

double star_discrepancy(const seqgen::CertifiedPointList& points) {
    auto v = sorted_values(points);
    auto t = two_sided(v);
    return std::max(t.d_plus, t.d_minus);
}

double extremal_discrepancy(const seqgen::CertifiedPointList& points) {
    auto v = sorted_values(points);
    auto t = two_sided(v);
    return t.d_plus + t.d_minus;
}

Report report(const seqgen::CertifiedPointList& points) {
    auto v = sorted_values(points);
    auto t = two_sided(v);
    Report r;
    r.n = points.size();
    r.d_star = std::max(t.d_plus, t.d_minus);
    r.d_extremal = t.d_plus + t.d_minus;
    r.slack = points.max_radius();
    return r;
}

BruteResult brute_force_discrepancy(const seqgen::CertifiedPointList& points) {
    require(points.size() <= kBruteForceGuard, FO_ESIZE,
            "brute-force oracle limited to 4096 points");
    auto v = sorted_values(points);
    const double n = static_cast<double>(v.size());

    // Candidate endpoints: each value both as an attained endpoint and as
    // an interior limit, plus the interval ends. A candidate carries the
    // number of points strictly before it, so the count inside [a, b) is
    // b.before - a.before for every boundary combination.
    struct Candidate {
        double coord;
        bool open;   // treat the endpoint as a limit from inside
        double before; // points in [0, candidate), open shifting past ties
    };
    auto rank_lt = [&](double c) {
        return static_cast<double>(std::lower_bound(v.begin(), v.end(), c) - v.begin());
    };
    auto rank_le = [&](double c) {
        return static_cast<double>(std::upper_bound(v.begin(), v.end(), c) - v.begin());
    };

    std::vector<Candidate> cands;
    cands.push_back({0.0, false, 0.0});
    cands.push_back({1.0, false, n});
    for (double p : v) {
        cands.push_back({p, false, rank_lt(p)});
        cands.push_back({p, true, rank_le(p)});
    }

    BruteResult out;
    for (const auto& b : cands) {
        if (b.coord <= 0.0 && !b.open) continue;
        out.d_star = std::max(out.d_star, std::abs(b.before / n - b.coord));
        for (const auto& a : cands) {
            if (a.coord > b.coord || (a.coord == b.coord && (a.open || !b.open))) continue;
            double dev = std::abs((b.before - a.before) / n - (b.coord - a.coord));
            out.d_extremal = std::max(out.d_extremal, dev);
        }
    }
    out.d_extremal = std::max(out.d_extremal, out.d_star);
    return out;
}

double dyadic_small_discrepancy(const seqgen::CertifiedPointList& points, std::uint32_t r) {
    require(r >= 1 && r <= kMaxDyadicLevel, FO_EINVAL, "level R must lie in [1,20]");
    require(!points.values.empty(), FO_EINVAL, "point list is empty");
    const std::uint64_t cells = 1ull << r;
    const double cell_width = std::ldexp(1.0, -static_cast<int>(r));
    const double n = static_cast<double>(points.size());

    std::vector<std::vector<double>> offsets(cells);
    for (double v : points.values) {
        auto c = static_cast<std::uint64_t>(v * static_cast<double>(cells));
        if (c >= cells) c = cells - 1;
        offsets[c].push_back(v - static_cast<double>(c) * cell_width);
    }

    double best = 0.0;
    for (std::uint64_t c = 0; c < cells; ++c) {
        auto& off = offsets[c];
        std::sort(off.begin(), off.end());
        // |count/N - b| is piecewise linear in b; extremes sit at the
        // distinct offsets (with both one-sided counts) and at b = 2^-R.
        std::size_t i = 0;
        while (i < off.size()) {
            std::size_t jpos = i;
            while (jpos < off.size() && off[jpos] == off[i]) ++jpos;
            const double b = off[i];
            best = std::max(best, std::abs(static_cast<double>(i) / n - b));
            best = std::max(best, std::abs(static_cast<double>(jpos) / n - b));
            i = jpos;
        }
        best = std::max(best, std::abs(static_cast<double>(off.size()) / n - cell_width));
    }
    return best;
}

DyadicReport dyadic_large_discrepancy(const seqgen::CertifiedPointList& points, std::uint32_t r) {
    require(r >= 1 && r <= kMaxDyadicLevel, FO_EINVAL, "level R must lie in [1,20]");
    require(!points.values.empty(), FO_EINVAL, "point list is empty");
    const std::uint64_t cells = 1ull << r;
    const double n = static_cast<double>(points.size());

    std::vector<std::uint64_t> bucket(cells, 0);
    for (double v : points.values) {
        auto c = static_cast<std::uint64_t>(v * static_cast<double>(cells));
        if (c >= cells) c = cells - 1;
        ++bucket[c];
    }

    // Prefix deviation T(a) = count([0, a2^-R)) / N - a 2^-R. Every grid
    // interval deviation is T(b) - T(a), so the pair supremum collapses to
    // max T - min T; the anchored version is max |T(a)|, a >= 1.
    DyadicReport rep;
    rep.r = r;
    double t = 0.0, t_min = 0.0, t_max = 0.0, star = 0.0;
    std::uint64_t cum = 0;
    for (std::uint64_t a = 1; a <= cells; ++a) {
        cum += bucket[a - 1];
        t = static_cast<double>(cum) / n - static_cast<double>(a) / static_cast<double>(cells);
        t_min = std::min(t_min, t);
        t_max = std::max(t_max, t);
        star = std::max(star, std::abs(t));
    }
    rep.d_large = t_max - t_min;
    rep.d_large_star = star;
    return rep;
}

SandwichReport sandwich_check(const seqgen::CertifiedPointList& points, std::uint32_t r) {
    SandwichReport s;
    auto base = report(points);
    s.d_star = base.d_star;
    s.d_extremal = base.d_extremal;
    s.slack = base.slack;
    s.d_small = dyadic_small_discrepancy(points, r);
    auto large = dyadic_large_discrepancy(points, r);
    s.d_large = large.d_large;
    s.d_large_star = large.d_large_star;

    const double tol = s.slack + 1e-12;
    s.holds = s.d_large_star <= s.d_star + tol && s.d_star <= s.d_extremal + tol &&
              s.d_extremal <= s.d_large + 3.0 * s.d_small + tol;
    return s;
}

CountReport empirical_measure(const seqgen::CertifiedPointList& points, double a, double b) {
    require(a >= 0.0 && a < b && b <= 1.0, FO_EINVAL, "need 0 <= a < b <= 1");
    CountReport out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double v = points.values[i];
        const double rad = points.radii[i];
        if (v >= a && v < b) ++out.count;
        const bool surely_in = v - rad >= a && v + rad < b;
        const bool surely_out = v + rad < a || v - rad >= b;
        if (surely_in) {
            ++out.count_lo;
            ++out.count_hi;
        } else if (!surely_out) {
            ++out.count_hi;
            out.ambiguous = true;
        }
    }
    return out;
}

} // namespace fo::disc
