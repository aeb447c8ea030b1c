#include "fracorbit.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "artifacts.hpp"
#include "discrepancy.hpp"
#include "error.hpp"
#include "lilclt.hpp"
#include "oscillatory.hpp"
#include "periodic.hpp"
#include "seqgen.hpp"

struct fo_points {
    fo::seqgen::CertifiedPointList data;
};

struct fo_func {
    fo::periodic::PeriodicFunction f;
};

struct fo_lil {
    fo::stats::LilTrajectory t;
};

struct fo_clt {
    fo::stats::CltSample s;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
fo_status guard(F&& body) {
    try {
        body();
        g_last_error.clear();
        return FO_OK;
    } catch (const fo::Error& e) {
        g_last_error = e.what();
        return e.code();
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return FO_ESIZE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FO_EINVAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return FO_EINVAL;
    }
}

fo::Dyadic parse_dyadic(const char* text, const char* what) {
    fo::require(text != nullptr, FO_EINVAL, std::string(what) + " is null");
    auto d = fo::Dyadic::parse(text);
    fo::require(d.has_value(), FO_EINVAL,
                std::string("cannot parse ") + what + " value '" + text + "'");
    return *d;
}

fo::seqgen::ExponentRule to_rule(const fo_rule* r) {
    if (!r) return fo::seqgen::ExponentRule::identity();
    switch (r->kind) {
    case FO_RULE_IDENTITY:
        return fo::seqgen::ExponentRule::identity();
    case FO_RULE_AFFINE:
        return fo::seqgen::ExponentRule::affine(r->a, r->d);
    case FO_RULE_EXPLICIT: {
        fo::require(r->list != nullptr && r->list_len > 0, FO_EINVAL,
                    "explicit rule needs a non-empty list");
        return fo::seqgen::ExponentRule::explicit_list(
            std::vector<std::int64_t>(r->list, r->list + r->list_len));
    }
    default:
        fo::fail(FO_EINVAL, "unknown rule kind");
    }
}

fo::osc::PhaseSpec to_phase(const fo_phase* p) {
    fo::require(p != nullptr, FO_EINVAL, "phase is null");
    fo::osc::PhaseSpec ph = p->kind == FO_PHASE_SINGLE
                                ? fo::osc::PhaseSpec::single(p->j, p->n, p->xi)
                                : fo::osc::PhaseSpec::pair(p->j, p->k, p->n, p->m,
                                                           p->sign >= 0 ? +1 : -1, p->xi);
    return ph;
}

fo_status copy_string(const std::string& s, char* buf, size_t cap) {
    if (!buf || cap == 0) return FO_ESIZE;
    const size_t n = std::min(s.size(), cap - 1);
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
    return n == s.size() ? FO_OK : FO_ESIZE;
}

} // namespace

extern "C" {

const char* fo_status_name(fo_status s) {
    switch (s) {
    case FO_OK: return "ok";
    case FO_EINVAL: return "invalid argument";
    case FO_EPRECISION: return "precision cap exceeded";
    case FO_ERETRY: return "certification retries exhausted";
    case FO_EBUDGET: return "quadrature budget exhausted";
    case FO_EBOUND: return "bound or invariant violation";
    case FO_EDOMAIN: return "precondition violation";
    case FO_EIO: return "i/o failure";
    case FO_ESIZE: return "size guard or buffer too small";
    }
    return "unknown status";
}

const char* fo_last_error(void) { return g_last_error.c_str(); }

const char* fo_version(void) { return "fracorbit 1.0.0"; }

/* ------------------------------- points ------------------------------- */

fo_status fo_points_power(const char* xi, const char* x, const fo_rule* rule,
                          uint64_t n_points, double eps, fo_points** out) {
    return guard([&] {
        fo::require(out != nullptr, FO_EINVAL, "out is null");
        auto spec = fo::seqgen::OrbitSpec::make(parse_dyadic(xi, "xi"), parse_dyadic(x, "x"),
                                                to_rule(rule));
        auto pts = fo::seqgen::generate_power_orbit(spec, n_points, eps);
        *out = new fo_points{std::move(pts)};
    });
}

fo_status fo_points_linear(const char* x, const fo_rule* rule, uint64_t n_points,
                           fo_points** out) {
    return guard([&] {
        fo::require(out != nullptr && x != nullptr, FO_EINVAL, "null argument");
        auto pts = fo::seqgen::generate_linear_orbit(x, to_rule(rule), n_points);
        *out = new fo_points{std::move(pts)};
    });
}

fo_status fo_points_iid(uint64_t seed, uint64_t n_points, fo_points** out) {
    return guard([&] {
        fo::require(out != nullptr, FO_EINVAL, "out is null");
        *out = new fo_points{fo::seqgen::generate_iid(seed, n_points)};
    });
}

fo_status fo_points_from_arrays(const double* values, const double* radii, uint64_t n,
                                fo_points** out) {
    return guard([&] {
        fo::require(out != nullptr && values != nullptr && n > 0, FO_EINVAL,
                    "need values and n > 0");
        fo::seqgen::CertifiedPointList pts;
        pts.precision_bits = 53;
        for (uint64_t i = 0; i < n; ++i) {
            fo::require(values[i] >= 0.0 && values[i] < 1.0, FO_EINVAL,
                        "values must lie in [0,1)");
            pts.values.push_back(values[i]);
            pts.radii.push_back(radii ? radii[i] : 0.0);
            pts.exponents.push_back(static_cast<std::int64_t>(i + 1));
        }
        *out = new fo_points{std::move(pts)};
    });
}

uint64_t fo_points_count(const fo_points* p) { return p ? p->data.size() : 0; }

double fo_points_value(const fo_points* p, uint64_t i) {
    return p && i < p->data.size() ? p->data.values[i] : 0.0;
}

double fo_points_radius(const fo_points* p, uint64_t i) {
    return p && i < p->data.size() ? p->data.radii[i] : 0.0;
}

int64_t fo_points_exponent(const fo_points* p, uint64_t i) {
    return p && i < p->data.size() ? p->data.exponents[i] : 0;
}

uint64_t fo_points_precision_bits(const fo_points* p) { return p ? p->data.precision_bits : 0; }

void fo_points_free(fo_points* p) { delete p; }

fo_status fo_required_precision(const char* xi, const char* x, const fo_rule* rule,
                                uint64_t n_points, double eps, uint64_t* bits) {
    return guard([&] {
        fo::require(bits != nullptr, FO_EINVAL, "bits is null");
        auto spec = fo::seqgen::OrbitSpec::make(parse_dyadic(xi, "xi"), parse_dyadic(x, "x"),
                                                to_rule(rule));
        *bits = fo::seqgen::required_precision(spec, n_points, eps);
    });
}

fo_status fo_sample_x(double a, double b, uint64_t seed, uint32_t mantissa_bits,
                      char* hex_buf, size_t cap) {
    fo_status rc = FO_OK;
    fo_status inner = guard([&] {
        auto x = fo::seqgen::sample_x(a, b, seed, mantissa_bits);
        rc = copy_string(x.to_hex_string(), hex_buf, cap);
    });
    return inner != FO_OK ? inner : rc;
}

/* ----------------------------- discrepancy ---------------------------- */

fo_status fo_disc_star(const fo_points* p, double* out) {
    return guard([&] {
        fo::require(p && out, FO_EINVAL, "null argument");
        *out = fo::disc::star_discrepancy(p->data);
    });
}

fo_status fo_disc_extremal(const fo_points* p, double* out) {
    return guard([&] {
        fo::require(p && out, FO_EINVAL, "null argument");
        *out = fo::disc::extremal_discrepancy(p->data);
    });
}

fo_status fo_disc_brute_force(const fo_points* p, double* star, double* extremal) {
    return guard([&] {
        fo::require(p && star && extremal, FO_EINVAL, "null argument");
        auto r = fo::disc::brute_force_discrepancy(p->data);
        *star = r.d_star;
        *extremal = r.d_extremal;
    });
}

fo_status fo_disc_report_get(const fo_points* p, fo_disc_report* out) {
    return guard([&] {
        fo::require(p && out, FO_EINVAL, "null argument");
        auto r = fo::disc::report(p->data);
        *out = {r.n, r.d_star, r.d_extremal, r.slack};
    });
}

fo_status fo_disc_dyadic(const fo_points* p, uint32_t r, fo_dyadic_report* out) {
    return guard([&] {
        fo::require(p && out, FO_EINVAL, "null argument");
        out->r = r;
        out->d_small = fo::disc::dyadic_small_discrepancy(p->data, r);
        auto large = fo::disc::dyadic_large_discrepancy(p->data, r);
        out->d_large = large.d_large;
        out->d_large_star = large.d_large_star;
    });
}

fo_status fo_disc_sandwich(const fo_points* p, uint32_t r, fo_sandwich_report* out) {
    return guard([&] {
        fo::require(p && out, FO_EINVAL, "null argument");
        auto s = fo::disc::sandwich_check(p->data, r);
        *out = {s.d_star, s.d_extremal, s.d_small, s.d_large, s.d_large_star, s.slack,
                s.holds ? 1 : 0};
    });
}

fo_status fo_empirical_measure(const fo_points* p, double a, double b, fo_count_report* out) {
    return guard([&] {
        fo::require(p && out, FO_EINVAL, "null argument");
        auto c = fo::disc::empirical_measure(p->data, a, b);
        *out = {c.count, c.count_lo, c.count_hi, c.ambiguous ? 1 : 0};
    });
}

/* ------------------------------ functions ----------------------------- */

fo_status fo_func_indicator(double a, double b, fo_func** out) {
    return guard([&] {
        fo::require(out != nullptr, FO_EINVAL, "out is null");
        *out = new fo_func{fo::periodic::PeriodicFunction::indicator(a, b)};
    });
}

fo_status fo_func_trig(const double* cos_coef, const double* sin_coef, uint32_t degree,
                       fo_func** out) {
    return guard([&] {
        fo::require(out && cos_coef && sin_coef && degree > 0, FO_EINVAL,
                    "need coefficients and degree > 0");
        *out = new fo_func{fo::periodic::PeriodicFunction::trig(
            std::vector<double>(cos_coef, cos_coef + degree),
            std::vector<double>(sin_coef, sin_coef + degree))};
    });
}

double fo_func_eval(const fo_func* f, double t) { return f ? f->f.eval(t) : 0.0; }

double fo_func_l2_norm(const fo_func* f) { return f ? f->f.l2_norm() : 0.0; }

double fo_func_variation(const fo_func* f) { return f ? f->f.variation() : 0.0; }

fo_status fo_func_fourier(const fo_func* f, uint32_t degree, double* cos_out, double* sin_out) {
    return guard([&] {
        fo::require(f && cos_out && sin_out, FO_EINVAL, "null argument");
        auto e = f->f.fourier(degree);
        std::memcpy(cos_out, e.cos_coef.data(), degree * sizeof(double));
        std::memcpy(sin_out, e.sin_coef.data(), degree * sizeof(double));
    });
}

fo_status fo_func_partial_sum(const fo_func* f, uint32_t degree, fo_func** out) {
    return guard([&] {
        fo::require(f && out, FO_EINVAL, "null argument");
        *out = new fo_func{f->f.partial_sum(degree)};
    });
}

double fo_func_remainder_eval(const fo_func* f, uint32_t degree, double t) {
    return f ? f->f.remainder_eval(degree, t) : 0.0;
}

void fo_func_free(fo_func* f) { delete f; }

/* ----------------------------- oscillatory ---------------------------- */

fo_status fo_osc_integral(const fo_phase* ph, double alpha, double beta, double tol,
                          fo_integral* out) {
    return guard([&] {
        fo::require(out != nullptr, FO_EINVAL, "out is null");
        auto ig = fo::osc::integral(to_phase(ph), alpha, beta, tol);
        *out = {ig.re, ig.im, ig.abs_value, ig.error_bound, ig.evaluations,
                ig.converged ? 1 : 0};
        fo::require(ig.converged, FO_EBUDGET,
                    "quadrature budget exhausted; achieved error " +
                        std::to_string(ig.error_bound));
    });
}

double fo_single_phase_bound(uint32_t j, double xi, uint32_t n, double alpha) {
    try {
        return fo::osc::single_phase_bound(j, xi, n, alpha);
    } catch (...) {
        return 0.0;
    }
}

fo_status fo_single_phase_check(const fo_phase* ph, double alpha, double beta, double tol,
                                fo_bound_check* out) {
    return guard([&] {
        fo::require(out != nullptr, FO_EINVAL, "out is null");
        auto c = fo::osc::single_phase_check(to_phase(ph), alpha, beta, tol);
        *out = {c.bound, c.integral_abs, c.error_bound, c.pass ? 1 : 0};
    });
}

double fo_pair_phase_bound(double xi, uint32_t n, uint32_t m, double alpha) {
    try {
        return fo::osc::pair_phase_bound(xi, n, m, alpha);
    } catch (...) {
        return 0.0;
    }
}

fo_status fo_pair_phase_check(const fo_phase* ph, double alpha, double beta, double tol,
                              fo_bound_check* out) {
    return guard([&] {
        fo::require(out != nullptr, FO_EINVAL, "out is null");
        auto c = fo::osc::pair_phase_check(to_phase(ph), alpha, beta, tol);
        *out = {c.bound, c.integral_abs, c.error_bound, c.pass ? 1 : 0};
    });
}

fo_status fo_partition_build(uint32_t j, uint32_t k, uint32_t m, uint32_t n, double xi,
                             double eta, double a, double b, fo_partition* out) {
    return guard([&] {
        fo::require(out != nullptr, FO_EINVAL, "out is null");
        auto p = fo::osc::build_partition(j, k, m, n, xi, eta, a, b);
        *out = {p.x1,   p.x2,   p.band_lo, p.band_hi, p.i1_lo, p.i1_hi, p.i2_lo,
                p.i2_hi, p.i3_lo, p.i3_hi,   p.eta,     p.excluded_measure,
                p.a,     p.b,     p.xi,      p.j,       p.k,     p.m,     p.n};
    });
}

fo_status fo_partition_check(const fo_partition* part, double alpha, double beta, double tol,
                             fo_bound_check* out) {
    return guard([&] {
        fo::require(part && out, FO_EINVAL, "null argument");
        fo::osc::PartitionResult p;
        p.x1 = part->x1;
        p.x2 = part->x2;
        p.band_lo = part->band_lo;
        p.band_hi = part->band_hi;
        p.i1_lo = part->i1_lo;
        p.i1_hi = part->i1_hi;
        p.i2_lo = part->i2_lo;
        p.i2_hi = part->i2_hi;
        p.i3_lo = part->i3_lo;
        p.i3_hi = part->i3_hi;
        p.eta = part->eta;
        p.excluded_measure = part->excluded_measure;
        p.a = part->a;
        p.b = part->b;
        p.xi = part->xi;
        p.j = part->j;
        p.k = part->k;
        p.m = part->m;
        p.n = part->n;
        auto c = fo::osc::partition_check(p, alpha, beta, tol);
        *out = {c.bound, c.integral_abs, c.error_bound, c.pass ? 1 : 0};
    });
}

/* ------------------------------ statistics ---------------------------- */

double fo_normal_cdf(double t) { return fo::stats::normal_cdf(t); }

fo_status fo_ks_distance(const double* samples, uint64_t n, double* out) {
    return guard([&] {
        fo::require(samples && out && n > 0, FO_EINVAL, "need samples and n > 0");
        *out = fo::stats::ks_distance_to_normal(std::vector<double>(samples, samples + n));
    });
}

fo_status fo_nform_values(uint64_t max_m, uint64_t* out) {
    return guard([&] {
        fo::require(out != nullptr, FO_EINVAL, "out is null");
        auto v = fo::stats::nform_values(max_m);
        std::memcpy(out, v.data(), v.size() * sizeof(uint64_t));
    });
}

fo_status fo_nform_floor(uint64_t n, uint64_t* out) {
    return guard([&] {
        fo::require(out != nullptr, FO_EINVAL, "out is null");
        *out = fo::stats::nform_floor(n);
    });
}

void fo_reference_constants(fo_ref_constants* out) {
    if (!out) return;
    auto c = fo::stats::reference_constants();
    *out = {c.lil_power_orbit, c.kesten, c.fukuyama_base2, c.chung_smirnov,
            c.fukuyama_irrational};
}

fo_status fo_lil_scan(const fo_points* p, int grid_kind, int variant, fo_lil** out) {
    return guard([&] {
        fo::require(p && out, FO_EINVAL, "null argument");
        auto t = fo::stats::lil_scan(
            p->data,
            grid_kind == FO_GRID_NFORM ? fo::stats::GridKind::nform : fo::stats::GridKind::dyadic,
            variant == FO_VARIANT_EXTREMAL ? fo::stats::Variant::extremal
                                           : fo::stats::Variant::star);
        *out = new fo_lil{std::move(t)};
    });
}

uint64_t fo_lil_rows(const fo_lil* t) { return t ? t->t.rows.size() : 0; }

uint64_t fo_lil_n(const fo_lil* t, uint64_t row) {
    return t && row < t->t.rows.size() ? t->t.rows[row].n : 0;
}

double fo_lil_d_star(const fo_lil* t, uint64_t row) {
    return t && row < t->t.rows.size() ? t->t.rows[row].d_star : 0.0;
}

double fo_lil_d_extremal(const fo_lil* t, uint64_t row) {
    return t && row < t->t.rows.size() ? t->t.rows[row].d_extremal : 0.0;
}

double fo_lil_stat_star(const fo_lil* t, uint64_t row) {
    return t && row < t->t.rows.size() ? t->t.rows[row].stat_star : 0.0;
}

double fo_lil_stat_extremal(const fo_lil* t, uint64_t row) {
    return t && row < t->t.rows.size() ? t->t.rows[row].stat_extremal : 0.0;
}

double fo_lil_running_max(const fo_lil* t, uint64_t row) {
    return t && row < t->t.rows.size() ? t->t.rows[row].running_max : 0.0;
}

int fo_lil_degenerate(const fo_lil* t) { return t && t->t.degenerate ? 1 : 0; }

void fo_lil_free(fo_lil* t) { delete t; }

fo_status fo_clt_sample(const fo_func* f, const fo_rule* rule, const fo_clt_params* par,
                        fo_clt** out) {
    return guard([&] {
        fo::require(f && par && out, FO_EINVAL, "null argument");
        fo::stats::CltParams p;
        p.xi = parse_dyadic(par->xi ? par->xi : "1", "xi");
        p.interval_a = par->interval_a;
        p.interval_b = par->interval_b;
        p.n_terms = par->n_terms;
        p.n_draws = par->n_draws;
        p.seed = par->seed;
        p.mantissa_bits = par->mantissa_bits == 0 ? 53 : par->mantissa_bits;
        p.threads = par->threads;
        *out = new fo_clt{fo::stats::clt_sample(f->f, to_rule(rule), p)};
    });
}

uint64_t fo_clt_draws(const fo_clt* c) { return c ? c->s.t_norm.size() : 0; }

double fo_clt_x(const fo_clt* c, uint64_t draw) {
    return c && draw < c->s.x_values.size() ? c->s.x_values[draw] : 0.0;
}

double fo_clt_t(const fo_clt* c, uint64_t draw) {
    return c && draw < c->s.t_norm.size() ? c->s.t_norm[draw] : 0.0;
}

double fo_clt_t_raw(const fo_clt* c, uint64_t draw) {
    return c && draw < c->s.t_raw.size() ? c->s.t_raw[draw] : 0.0;
}

double fo_clt_ks(const fo_clt* c) { return c ? c->s.ks_norm : 0.0; }

double fo_clt_ks_raw(const fo_clt* c) { return c ? c->s.ks_raw : 0.0; }

void fo_clt_free(fo_clt* c) { delete c; }

/* -------------------------------- runner ------------------------------ */

fo_status fo_run(const char* command, const char* config_json, const fo_run_options* opt,
                 char* summary, size_t cap) {
    fo_status copy_rc = FO_OK;
    fo_status rc = guard([&] {
        fo::require(command != nullptr, FO_EINVAL, "command is null");
        fo::run::Options o;
        if (opt) {
            if (opt->out_dir) o.out_dir = opt->out_dir;
            o.threads = opt->threads;
            o.has_seed = opt->has_seed != 0;
            o.seed = opt->seed;
            o.has_tolerance = opt->has_tolerance != 0;
            o.tolerance = opt->tolerance;
        }
        std::string s = fo::run::run_command(command, config_json ? config_json : "", o);
        if (summary && cap > 0) copy_rc = copy_string(s, summary, cap);
    });
    return rc != FO_OK ? rc : copy_rc;
}

} // extern "C"
