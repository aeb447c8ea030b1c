#include "selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "artifacts.hpp"
#include "discrepancy.hpp"
#include "error.hpp"
#include "ioutil.hpp"
#include "lilclt.hpp"
#include "oscillatory.hpp"
#include "periodic.hpp"
#include "rng.hpp"
#include "seqgen.hpp"

namespace fo::selftest {

using nlohmann::json;
namespace fs = std::filesystem;
using io::fmt17;
using io::write_text_file;

namespace {

constexpr std::uint64_t kDefaultSeed = 0x66726163u; // stable across runs

struct Criterion {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

struct Ctx {
    std::uint64_t seed = kDefaultSeed;
    bool quick = false;
    unsigned threads = 0;
    fs::path dir;
};

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

double uniform_in(SplitMix64& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.next_unit();
}

template <typename F>
Criterion timed(int id, std::string name, double budget_seconds, F&& body) {
    Criterion c;
    c.id = id;
    c.name = std::move(name);
    c.budget_seconds = budget_seconds;
    auto start = std::chrono::steady_clock::now();
    try {
        c.pass = body(c.detail);
    } catch (const Error& e) {
        c.pass = false;
        c.detail = std::string("error: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.pass && c.seconds > c.budget_seconds) {
        c.pass = false;
        c.detail += " [runtime " + fmt17(c.seconds) + "s over budget]";
    }
    return c;
}

/* 1: closed-form star/extremal match the O(N^2) oracle within 1e-12 */
Criterion criterion_oracle(const Ctx& ctx) {
    return timed(1, "discrepancy closed forms match the brute-force oracle", 10.0,
                 [&](std::string& detail) {
                     const int instances = ctx.quick ? 10 : 50;
                     double worst = 0.0;
                     for (int i = 0; i < instances; ++i) {
                         auto rng = substream(ctx.seed, 100 + i);
                         std::uint64_t n = 1 + rng.next() % 256;
                         auto pts = seqgen::generate_iid(rng.next(), n);
                         auto rep = disc::report(pts);
                         auto oracle = disc::brute_force_discrepancy(pts);
                         worst = std::max(worst, std::abs(rep.d_star - oracle.d_star));
                         worst = std::max(worst, std::abs(rep.d_extremal - oracle.d_extremal));
                     }
                     detail = "max |closed - oracle| = " + fmt17(worst) + " over " +
                              std::to_string(instances) + " instances";
                     return worst <= 1e-12;
                 });
}

/* 2: dyadic sandwich inequality at every level */
Criterion criterion_sandwich(const Ctx& ctx) {
    return timed(2, "dyadic sandwich inequality", 30.0, [&](std::string& detail) {
        const int instances = ctx.quick ? 10 : 50;
        int checked = 0;
        for (int i = 0; i < instances; ++i) {
            auto rng = substream(ctx.seed, 200 + i);
            std::uint64_t n = 1 + rng.next() % 2048;
            auto pts = seqgen::generate_iid(rng.next(), n);
            for (std::uint32_t r = 1; r <= 8; ++r) {
                auto sw = disc::sandwich_check(pts, r);
                ++checked;
                if (!sw.holds) {
                    detail = "violation at instance " + std::to_string(i) + ", R=" +
                             std::to_string(r) + ": D*>=" + fmt17(sw.d_large_star) + " D*=" +
                             fmt17(sw.d_star) + " D=" + fmt17(sw.d_extremal) + " bound=" +
                             fmt17(sw.d_large + 3 * sw.d_small);
                    return false;
                }
            }
        }
        detail = std::to_string(checked) + " (instance, R) pairs hold with slack 1e-12";
        return true;
    });
}

/* 3: single- and pair-phase oscillation bounds */
Criterion criterion_osc_bounds(const Ctx& ctx) {
    return timed(3, "oscillatory integral bounds (single and pair phases)", 60.0,
                 [&](std::string& detail) {
                     const int cases = ctx.quick ? 6 : 40;
                     const double tol = 1e-6;
                     auto rng = substream(ctx.seed, 300);
                     std::string csv = "case_id,kind,bound,integral_abs,error_bound,pass\n";
                     int failures = 0, case_id = 0;
                     double tightest = 1e300;
                     for (int c = 0; c < cases; ++c) {
                         for (int kind = 0; kind < 2; ++kind) {
                             osc::PhaseSpec ph;
                             double alpha = 0, beta = 0;
                             for (;;) {
                                 alpha = uniform_in(rng, 1.1, 2.0);
                                 beta = uniform_in(rng, alpha + 0.05, 2.1);
                                 double xi = uniform_in(rng, 0.5, 2.0);
                                 std::uint32_t j = 1 + rng.next() % 6;
                                 std::uint32_t n = 1 + rng.next() % 8;
                                 if (kind == 0) {
                                     ph = osc::PhaseSpec::single(j, n, xi);
                                 } else {
                                     std::uint32_t k = 1 + rng.next() % 6;
                                     std::uint32_t m = 1 + rng.next() % 8;
                                     if (m == n) continue;
                                     ph = osc::PhaseSpec::pair(j, k, n, m, +1, xi);
                                 }
                                 if (std::abs(ph.cycles(beta)) + std::abs(ph.cycles(alpha)) <= 1500.0)
                                     break;
                             }
                             auto check = kind == 0 ? osc::single_phase_check(ph, alpha, beta, tol)
                                                    : osc::pair_phase_check(ph, alpha, beta, tol);
                             if (!check.pass) ++failures;
                             tightest = std::min(tightest,
                                                 check.bound - check.integral_abs);
                             csv += std::to_string(case_id++) + "," +
                                    (kind == 0 ? "single" : "pair") + "," + fmt17(check.bound) +
                                    "," + fmt17(check.integral_abs) + "," +
                                    fmt17(check.error_bound) + "," + (check.pass ? "1" : "0") +
                                    "\n";
                         }
                     }
                     write_text_file(ctx.dir / "crit3_vdc.csv", csv);
                     detail = std::to_string(case_id) + " cases, " + std::to_string(failures) +
                              " failures, smallest margin " + fmt17(tightest);
                     return failures == 0;
                 });
}

/* 4: stationary-phase partition construction and bound */
Criterion criterion_partition(const Ctx& ctx) {
    return timed(4, "phase-derivative partition construction", 60.0, [&](std::string& detail) {
        const int cases = ctx.quick ? 5 : 40;
        const int subcases = ctx.quick ? 3 : 10;
        const double tol = 1e-6;
        const double A = 1.1, B = 2.1;
        auto rng = substream(ctx.seed, 400);
        std::string csv = "case_id,sub,bound,integral_abs,error_bound,pass\n";
        int failures = 0;
        for (int c = 0; c < cases; ++c) {
            std::uint32_t m = 0, n = 0, j = 0, k = 0;
            double xi = 0, eta = 0;
            osc::PartitionResult part;
            for (;;) {
                j = 1 + rng.next() % 6;
                k = 1 + rng.next() % 6;
                m = 1 + rng.next() % 6;
                n = 1 + rng.next() % 7;
                if (m >= n) continue;
                xi = uniform_in(rng, 0.5, 1.5);
                eta = std::exp(uniform_in(rng, std::log(0.005), std::log(0.1)));
                auto probe = osc::PhaseSpec::pair(j, k, n, m, -1, xi);
                if (std::abs(probe.cycles(B)) + std::abs(probe.cycles(A)) > 1500.0) continue;
                part = osc::build_partition(j, k, m, n, xi, eta, A, B);
                break;
            }

            // structural checks: ordering, excluded measure, derivative root
            bool ok = part.excluded_measure <= 2.0 * B * eta + 1e-12;
            auto nonempty = [](double lo, double hi) { return lo <= hi; };
            if (nonempty(part.i1_lo, part.i1_hi) && nonempty(part.i2_lo, part.i2_hi))
                ok = ok && part.i1_hi <= part.i2_lo;
            if (nonempty(part.i2_lo, part.i2_hi) && nonempty(part.i3_lo, part.i3_hi))
                ok = ok && part.i2_hi <= part.i3_lo;
            if (nonempty(part.i1_lo, part.i1_hi) && nonempty(part.i3_lo, part.i3_hi))
                ok = ok && part.i1_hi <= part.i3_lo;
            {
                const double jn = static_cast<double>(j) * n;
                const double km = static_cast<double>(k) * m;
                const double up = jn * std::pow(part.x1, n - 1.0);
                const double dn = km * std::pow(part.x1, m - 1.0);
                ok = ok && std::abs(up - dn) <= 1e-10 * (up + dn);
            }
            if (!ok) {
                ++failures;
                detail = "structural failure at case " + std::to_string(c);
                continue;
            }

            struct Piece {
                double lo, hi;
            };
            std::vector<Piece> pieces;
            if (nonempty(part.i1_lo, part.i1_hi) && part.i1_hi - part.i1_lo > 1e-6)
                pieces.push_back({part.i1_lo, part.i1_hi});
            if (nonempty(part.i2_lo, part.i2_hi) && part.i2_hi - part.i2_lo > 1e-6)
                pieces.push_back({part.i2_lo, part.i2_hi});
            if (nonempty(part.i3_lo, part.i3_hi) && part.i3_hi - part.i3_lo > 1e-6)
                pieces.push_back({part.i3_lo, part.i3_hi});

            for (int s = 0; s < subcases && !pieces.empty(); ++s) {
                double alpha = 0, beta = 0;
                do { // redraw until the subinterval is usable
                    const auto& p = pieces[rng.next() % pieces.size()];
                    alpha = uniform_in(rng, p.lo, p.hi);
                    beta = uniform_in(rng, alpha, p.hi);
                } while (beta - alpha < 1e-8);
                auto check = osc::partition_check(part, alpha, beta, tol);
                if (!check.pass) ++failures;
                csv += std::to_string(c) + "," + std::to_string(s) + "," + fmt17(check.bound) +
                       "," + fmt17(check.integral_abs) + "," + fmt17(check.error_bound) + "," +
                       (check.pass ? "1" : "0") + "\n";
            }
        }
        write_text_file(ctx.dir / "crit4_partition.csv", csv);
        if (failures == 0)
            detail = std::to_string(cases) + " partitions with structural and bound checks";
        return failures == 0;
    });
}

/* 5: Fourier coefficient bound and Parseval monotonicity */
Criterion criterion_fourier(const Ctx& ctx) {
    return timed(5, "Fourier coefficient bound and partial-sum norms", 10.0,
                 [&](std::string& detail) {
                     const int indicators = ctx.quick ? 10 : 100;
                     const std::uint32_t max_j = ctx.quick ? 200 : 1000;
                     auto rng = substream(ctx.seed, 500);
                     double worst_excess = -1.0;
                     for (int i = 0; i < indicators; ++i) {
                         double a = 0, b = 0;
                         do { // redraw until the interval is proper
                             a = rng.next_unit();
                             b = rng.next_unit();
                             if (a > b) std::swap(a, b);
                         } while (b - a < 1e-6 || b > 1.0 - 1e-12);
                         auto f = periodic::PeriodicFunction::indicator(a, b);
                         auto e = f.fourier(max_j);
                         for (std::uint32_t jj = 1; jj <= max_j; ++jj) {
                             double cap = 1.0 / jj + 1e-12;
                             worst_excess = std::max(worst_excess,
                                                     std::abs(e.cos_coef[jj - 1]) - cap);
                             worst_excess = std::max(worst_excess,
                                                     std::abs(e.sin_coef[jj - 1]) - cap);
                         }
                     }
                     if (worst_excess > 0.0) {
                         detail = "coefficient bound exceeded by " + fmt17(worst_excess);
                         return false;
                     }

                     for (int i = 0; i < (ctx.quick ? 5 : 25); ++i) {
                         double len = uniform_in(rng, 0.2, 0.8);
                         double a = uniform_in(rng, 0.0, 1.0 - len);
                         auto f = periodic::PeriodicFunction::indicator(a, a + len);
                         double prev = 0.0;
                         for (std::uint32_t d = 1; d <= 64; ++d) {
                             double nd = f.partial_sum(d).l2_norm();
                             if (nd + 1e-12 < prev) {
                                 detail = "norm decreased at degree " + std::to_string(d);
                                 return false;
                             }
                             prev = nd;
                             if (nd > f.l2_norm() + 1e-12) {
                                 detail = "partial sum norm exceeds the function norm";
                                 return false;
                             }
                         }
                         if (prev < 0.99 * f.l2_norm()) {
                             detail = "p_64 norm ratio " + fmt17(prev / f.l2_norm()) +
                                      " below 0.99 at length " + fmt17(len);
                             return false;
                         }
                     }
                     detail = "coefficient caps hold to j <= " + std::to_string(max_j) +
                              "; norms monotone with p_64 >= 0.99 f";
                     return true;
                 });
}

/* 6: CLT sampling against the standard normal */
Criterion criterion_clt(const Ctx& ctx) {
    return timed(6, "normalized sums match the standard normal (KS)", 900.0,
                 [&](std::string& detail) {
                     stats::CltParams par;
                     par.xi = Dyadic::from_double(1.0);
                     par.seed = ctx.seed + 600;
                     par.n_draws = ctx.quick ? 120 : 2000;
                     par.threads = ctx.threads;
                     auto f = periodic::PeriodicFunction::indicator(0.0, 0.5);
                     auto rule = seqgen::ExponentRule::identity();

                     par.n_terms = 1ull << 8;
                     auto small = stats::clt_sample(f, rule, par);
                     par.n_terms = ctx.quick ? 1ull << 10 : 1ull << 12;
                     auto large = stats::clt_sample(f, rule, par);

                     std::string csv = "draw,x,T\n";
                     for (std::uint64_t i = 0; i < par.n_draws; ++i)
                         csv += std::to_string(i) + "," + fmt17(large.x_values[i]) + "," +
                                fmt17(large.t_norm[i]) + "\n";
                     write_text_file(ctx.dir / "crit6_clt.csv", csv);

                     detail = "ks(N=" + std::to_string(large.n_terms) + ") = " +
                              fmt17(large.ks_norm) + ", ks(N=256) = " + fmt17(small.ks_norm) +
                              ", ks_raw = " + fmt17(large.ks_raw);
                     if (ctx.quick) return large.ks_norm <= 0.2; // monotone trend needs full M
                     return large.ks_norm <= 0.10 && large.ks_norm <= small.ks_norm + 0.02;
                 });
}

/* 7: LIL statistic envelope and running-max stabilization */
Criterion criterion_lil(const Ctx& ctx) {
    return timed(7, "iterated-logarithm statistic envelope", 1200.0, [&](std::string& detail) {
        const int draws = ctx.quick ? 4 : 16;
        const std::uint64_t n_max = ctx.quick ? (1ull << 13) : 100000;
        const std::uint64_t n_decade = n_max / 10;

        auto grid = stats::dyadic_grid(n_max);
        if (std::find(grid.begin(), grid.end(), n_decade) == grid.end()) {
            grid.push_back(n_decade);
            std::sort(grid.begin(), grid.end());
        }

        auto stat_at = [&](const stats::LilTrajectory& t, std::uint64_t n) {
            for (const auto& row : t.rows)
                if (row.n == n) return row;
            fail(FO_EINVAL, "grid row missing");
        };

        std::vector<double> power_final, power_ratio, iid_final;
        for (int i = 0; i < draws; ++i) {
            auto xseed = substream(ctx.seed, 700 + i).next();
            Dyadic x = seqgen::sample_x(1.1, 2.1, xseed, 53);
            auto spec = seqgen::OrbitSpec::make(Dyadic::from_double(1.0), std::move(x),
                                                seqgen::ExponentRule::identity());
            auto pts = seqgen::generate_power_orbit(spec, n_max);
            auto traj = stats::lil_scan(pts, grid, stats::Variant::star);
            char name[40];
            std::snprintf(name, sizeof name, "crit7_lil_power_%02d.csv", i);
            std::string csv = "N,d_star,d_extremal,L_star,L_extremal,running_max\n";
            for (const auto& row : traj.rows)
                csv += std::to_string(row.n) + "," + fmt17(row.d_star) + "," +
                       fmt17(row.d_extremal) + "," + fmt17(row.stat_star) + "," +
                       fmt17(row.stat_extremal) + "," + fmt17(row.running_max) + "\n";
            write_text_file(ctx.dir / name, csv);

            auto last = stat_at(traj, n_max);
            auto decade = stat_at(traj, n_decade);
            power_final.push_back(last.stat_star);
            power_ratio.push_back(last.running_max / decade.running_max - 1.0);

            auto iid = seqgen::generate_iid(substream(ctx.seed, 800 + i).next(), n_max);
            auto iid_traj = stats::lil_scan(iid, grid, stats::Variant::star);
            iid_final.push_back(stat_at(iid_traj, n_max).stat_star);
        }

        const double med_power = median_of(power_final);
        const double med_iid = median_of(iid_final);
        const double med_ratio = median_of(power_ratio);
        detail = "median L*(N) power = " + fmt17(med_power) + ", iid = " + fmt17(med_iid) +
                 ", median last-decade running-max increase = " + fmt17(med_ratio);
        json summary = {{"median_power", med_power},
                        {"median_iid", med_iid},
                        {"median_ratio", med_ratio},
                        {"power_final", power_final},
                        {"iid_final", iid_final}};
        write_text_file(ctx.dir / "crit7_summary.json", summary.dump(2) + "\n");
        if (ctx.quick) return std::isfinite(med_power) && med_power > 0.0;
        return med_power >= 0.45 && med_power <= 1.05 && med_iid >= 0.45 && med_iid <= 1.05 &&
               med_ratio <= 0.25;
    });
}

/* 8: certified radii and regeneration agreement */
Criterion criterion_certified(const Ctx& ctx) {
    return timed(8, "certified generation and doubled-precision agreement", 120.0,
                 [&](std::string& detail) {
                     const std::uint64_t n = ctx.quick ? 2000 : 10000;
                     Dyadic x = seqgen::sample_x(1.1, 2.1, substream(ctx.seed, 900).next(), 53);
                     auto spec = seqgen::OrbitSpec::make(Dyadic::from_double(1.0), std::move(x),
                                                         seqgen::ExponentRule::identity());
                     auto first = seqgen::generate_power_orbit(spec, n);
                     if (first.max_radius() >= 0x1.0p-40) {
                         detail = "max radius " + fmt17(first.max_radius()) + " >= 2^-40";
                         return false;
                     }
                     auto second =
                         seqgen::generate_power_orbit(spec, n, seqgen::kDefaultEps,
                                                      2 * first.precision_bits);
                     double worst = 0.0;
                     for (std::uint64_t i = 0; i < n; ++i) {
                         double shift = std::abs(first.values[i] - second.values[i]);
                         double allowed = first.radii[i] + second.radii[i];
                         worst = std::max(worst, shift - allowed);
                     }
                     detail = "max radius " + fmt17(first.max_radius()) +
                              "; worst regeneration excess " + fmt17(worst);
                     return worst <= 0.0;
                 });
}

/* 9: artifact determinism across reruns and worker counts */
Criterion criterion_determinism(const Ctx& ctx) {
    return timed(9, "byte-identical artifacts across reruns and thread counts", 300.0,
                 [&](std::string& detail) {
                     json clt_cfg = {{"n_terms", 256},
                                     {"n_draws", 120},
                                     {"seed", ctx.seed + 901}};
                     json lil_cfg = {{"source",
                                      {{"kind", "power"}, {"xi", "1"}, {"sample", true}}},
                                     {"n_max", 2048},
                                     {"draws", 2},
                                     {"seed", ctx.seed + 902}};

                     auto run_to = [&](const std::string& cmd, const json& cfg,
                                       const std::string& sub, unsigned threads) {
                         run::Options o;
                         o.out_dir = (ctx.dir / "crit9" / sub).string();
                         o.threads = threads;
                         return run::run_command(cmd, cfg.dump(), o);
                     };

                     auto s1 = run_to("clt", clt_cfg, "clt_t1", 1);
                     auto s2 = run_to("clt", clt_cfg, "clt_t2", 2);
                     auto s3 = run_to("clt", clt_cfg, "clt_t1b", 1);
                     auto l1 = run_to("lil", lil_cfg, "lil_a", 1);
                     auto l2 = run_to("lil", lil_cfg, "lil_b", 2);

                     auto bytes = [&](const std::string& sub, const std::string& file) {
                         return io::read_file_bytes(ctx.dir / "crit9" / sub / file);
                     };
                     bool ok = bytes("clt_t1", "clt.csv") == bytes("clt_t2", "clt.csv") &&
                               bytes("clt_t1", "clt.csv") == bytes("clt_t1b", "clt.csv") &&
                               bytes("lil_a", "lil_000.csv") == bytes("lil_b", "lil_000.csv") &&
                               bytes("lil_a", "lil_001.csv") == bytes("lil_b", "lil_001.csv");
                     // summaries carry absolute paths, so compare the stat fields instead
                     ok = ok && json::parse(s1)["ks_distance"] == json::parse(s2)["ks_distance"];
                     ok = ok && json::parse(l1)["median_final_stat"] ==
                                    json::parse(l2)["median_final_stat"];
                     detail = ok ? "clt and lil artifacts byte-identical for threads in {1,2}"
                                 : "artifact bytes differ across runs";
                     return ok;
                 });
}

} // namespace

json run(const json& cfg, const run::Options& opt) {
    Ctx ctx;
    ctx.quick = cfg.value("quick", false);
    ctx.seed = opt.has_seed ? opt.seed : cfg.value("seed", kDefaultSeed);
    ctx.threads = opt.threads;
    require(!opt.out_dir.empty(), FO_EINVAL, "selftest requires --out <dir>");
    ctx.dir = fs::path(opt.out_dir);
    std::error_code ec;
    fs::create_directories(ctx.dir, ec);
    require(!ec, FO_EIO, "cannot create output directory " + ctx.dir.string());

    std::vector<Criterion> results;
    results.push_back(criterion_oracle(ctx));
    results.push_back(criterion_sandwich(ctx));
    results.push_back(criterion_osc_bounds(ctx));
    results.push_back(criterion_partition(ctx));
    results.push_back(criterion_fourier(ctx));
    results.push_back(criterion_clt(ctx));
    results.push_back(criterion_lil(ctx));
    results.push_back(criterion_certified(ctx));
    results.push_back(criterion_determinism(ctx));

    json arr = json::array();
    bool all_pass = true;
    for (const auto& c : results) {
        all_pass = all_pass && c.pass;
        arr.push_back({{"id", c.id},
                       {"name", c.name},
                       {"pass", c.pass},
                       {"detail", c.detail},
                       {"seconds", c.seconds},
                       {"budget_seconds", c.budget_seconds}});
    }
    json summary = {{"command", "selftest"},
                    {"quick", ctx.quick},
                    {"seed", ctx.seed},
                    {"all_pass", all_pass},
                    {"criteria", arr}};
    write_text_file(ctx.dir / "selftest_summary.json", summary.dump(2) + "\n");
    if (!all_pass)
        fail(FO_EBOUND, "selftest criteria failed; see " +
                            (ctx.dir / "selftest_summary.json").string());
    return summary;
}

} // namespace fo::selftest
