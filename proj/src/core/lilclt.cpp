#include "lilclt.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <thread>

#include "discrepancy.hpp"
#include "error.hpp"
#include "rng.hpp"

namespace fo::stats {

double normal_cdf(double t) { return 0.5 * std::erfc(-t * M_SQRT1_2); }

double ks_distance_to_normal(std::vector<double> samples) {
    require(!samples.empty(), FO_EINVAL, "need at least one sample");
    std::sort(samples.begin(), samples.end());
    const double m = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double phi = normal_cdf(samples[i]);
        d = std::max(d, static_cast<double>(i + 1) / m - phi);
        d = std::max(d, phi - static_cast<double>(i) / m);
    }
    return d;
}

std::vector<std::uint64_t> nform_values(std::uint64_t max_m) {
    require(max_m >= 1, FO_EINVAL, "max_m must be >= 1");
    std::vector<std::uint64_t> out;
    out.reserve(max_m);
    std::uint64_t acc = 0;
    for (std::uint64_t i = 1; i <= max_m; ++i) {
        std::uint64_t step = i * i;
        require(step < (1ull << 32), FO_EINVAL, "grid value overflow");
        step = step * step + i;
        require(acc + step > acc, FO_EINVAL, "grid value overflow");
        acc += step;
        out.push_back(acc);
    }
    return out;
}

std::uint64_t nform_floor(std::uint64_t n) {
    require(n >= 2, FO_EINVAL, "no grid value below N(1) = 2");
    std::uint64_t acc = 0, i = 0;
    for (;;) {
        ++i;
        std::uint64_t step = i * i;
        step = step * step + i;
        if (acc + step > n || acc + step < acc) return acc;
        acc += step;
    }
}

double loglog_guarded(double n) {
    static const double floor16 = std::log(std::log(16.0));
    const double ll = std::log(std::max(1.0, std::log(n)));
    return std::max(ll, floor16);
}

std::vector<std::uint64_t> dyadic_grid(std::uint64_t n_max) {
    require(n_max >= 16, FO_EINVAL, "n_max must be >= 16");
    std::vector<std::uint64_t> grid;
    for (std::uint64_t n = 16; n <= n_max; n *= 2) grid.push_back(n);
    if (grid.back() != n_max) grid.push_back(n_max);
    return grid;
}

LilTrajectory lil_scan(const seqgen::CertifiedPointList& points,
                       const std::vector<std::uint64_t>& grid, Variant variant) {
    require(!grid.empty(), FO_EINVAL, "grid is empty");
    require(points.size() >= grid.back(), FO_EINVAL, "grid exceeds the point count");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        require(grid[i] < grid[i + 1], FO_EINVAL, "grid must be strictly increasing");
    require(grid.front() >= 1, FO_EINVAL, "grid values must be >= 1");

    LilTrajectory out;
    out.variant = variant;
    out.rows.reserve(grid.size());

    // incremental sorted structure: O(log N) inserts, O(N) per evaluation
    std::multiset<double> sorted;
    std::vector<double> snapshot;
    std::size_t next = 0;
    double run_max = 0.0;

    for (std::uint64_t g : grid) {
        while (next < g) sorted.insert(points.values[next++]);
        snapshot.assign(sorted.begin(), sorted.end());

        const double n = static_cast<double>(g);
        double d_plus = 0.0, d_minus = 0.0;
        for (std::size_t i = 0; i < snapshot.size(); ++i) {
            d_plus = std::max(d_plus, static_cast<double>(i + 1) / n - snapshot[i]);
            d_minus = std::max(d_minus, snapshot[i] - static_cast<double>(i) / n);
        }

        LilRow row;
        row.n = g;
        row.d_star = std::max(d_plus, d_minus);
        row.d_extremal = d_plus + d_minus;
        const double scale = std::sqrt(n) / std::sqrt(loglog_guarded(n));
        row.stat_star = scale * row.d_star;
        row.stat_extremal = scale * row.d_extremal;
        run_max = std::max(run_max, variant == Variant::star ? row.stat_star : row.stat_extremal);
        row.running_max = run_max;
        out.rows.push_back(row);
    }
    out.degenerate = out.rows.back().d_extremal >= 1.0 - 1e-12;
    return out;
}

LilTrajectory lil_scan(const seqgen::CertifiedPointList& points, GridKind grid,
                       Variant variant) {
    const std::uint64_t n_max = points.size();
    require(n_max >= 16, FO_EINVAL, "need at least 16 points");
    std::vector<std::uint64_t> g;
    if (grid == GridKind::dyadic) {
        g = dyadic_grid(n_max);
    } else {
        for (std::uint64_t v : nform_values(256)) {
            if (v > n_max) break;
            if (v >= 16) g.push_back(v);
        }
        require(!g.empty(), FO_EINVAL, "no admissible grid values below n_max");
    }
    return lil_scan(points, g, variant);
}

CltSample clt_sample(const periodic::PeriodicFunction& f, const seqgen::ExponentRule& rule,
                     const CltParams& par) {
    require(par.n_draws >= 100, FO_EINVAL, "need at least 100 draws");
    require(par.n_terms >= 1, FO_EINVAL, "need at least one term");
    require(par.interval_a > 1.0 && par.interval_b > par.interval_a, FO_EINVAL,
            "interval must satisfy 1 < A < B");
    require(f.admissible(), FO_EINVAL, "function violates the variation bound");
    const double norm = f.l2_norm();
    require(norm > 0.0, FO_EINVAL, "degenerate function with zero norm");

    const unsigned mantissa = par.mantissa_bits == 0 ? 53 : par.mantissa_bits;
    unsigned workers = par.threads == 0 ? std::thread::hardware_concurrency() : par.threads;
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, 64);

    CltSample out;
    out.n_terms = par.n_terms;
    out.x_values.resize(par.n_draws);
    out.x_hex.resize(par.n_draws);
    out.t_norm.resize(par.n_draws);
    out.t_raw.resize(par.n_draws);

    const double sqn = std::sqrt(static_cast<double>(par.n_terms));
    std::atomic<std::uint64_t> cursor{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = cursor.fetch_add(1);
            if (i >= par.n_draws) return;
            try {
                std::uint64_t draw_seed = substream(par.seed, i).next();
                Dyadic x = seqgen::sample_x(par.interval_a, par.interval_b, draw_seed, mantissa);
                auto spec = seqgen::OrbitSpec::make(par.xi, x, rule, par.interval_a,
                                                    par.interval_b);
                auto pts = seqgen::generate_power_orbit(spec, par.n_terms);
                double sum = 0.0;
                for (double v : pts.values) sum += f.eval(v);
                out.x_values[i] = x.to_double();
                out.x_hex[i] = x.to_hex_string();
                out.t_norm[i] = sum / (norm * sqn);
                out.t_raw[i] = sum / sqn;
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                cursor.store(par.n_draws);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    out.ks_norm = ks_distance_to_normal(out.t_norm);
    out.ks_raw = ks_distance_to_normal(out.t_raw);
    return out;
}

RefConstants reference_constants() {
    RefConstants c;
    c.lil_power_orbit = M_SQRT1_2;
    c.kesten = 2.0 / (M_PI * M_PI);
    c.fukuyama_base2 = 2.0 * std::sqrt(21.0) / 9.0;
    c.chung_smirnov = M_SQRT1_2;
    c.fukuyama_irrational = M_SQRT1_2;
    return c;
}

} // namespace fo::stats
