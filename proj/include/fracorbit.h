/* fracorbit — certified fractional-part orbits, exact discrepancies,
 * oscillatory-integral bounds and LIL/CLT statistics behind a C ABI.
 *
 * All functions return fo_status unless they are pure scalar helpers.
 * Out-parameters are written only on FO_OK. A thread-local detail string
 * for the most recent failure is available via fo_last_error().
 */
#ifndef FRACORBIT_H
#define FRACORBIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FO_API __declspec(dllexport)
#else
#define FO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fo_status {
    FO_OK = 0,
    FO_EINVAL = 1,     /* invalid argument or config */
    FO_EPRECISION = 2, /* required precision exceeds the configured cap */
    FO_ERETRY = 3,     /* certification retries exhausted */
    FO_EBUDGET = 4,    /* quadrature node budget exhausted */
    FO_EBOUND = 5,     /* invariant or bound violation */
    FO_EDOMAIN = 6,    /* precondition violation (e.g. subinterval not inside a partition piece) */
    FO_EIO = 7,        /* file i/o failure */
    FO_ESIZE = 8       /* size guard tripped or output buffer too small */
} fo_status;

FO_API const char* fo_status_name(fo_status s);
FO_API const char* fo_last_error(void);
FO_API const char* fo_version(void);

/* ---------------------------------------------------------------- */
/* Exponent rules: s_1 < s_2 < ... strictly increasing positive      */
/* ---------------------------------------------------------------- */

enum { FO_RULE_IDENTITY = 0, FO_RULE_AFFINE = 1, FO_RULE_EXPLICIT = 2 };

typedef struct fo_rule {
    int kind;            /* FO_RULE_* */
    int64_t a;           /* affine: s_n = a + (n-1)*d, a >= 1 */
    int64_t d;           /* affine: d >= 1 */
    const int64_t* list; /* explicit: strictly increasing positive */
    uint64_t list_len;
} fo_rule;

/* ---------------------------------------------------------------- */
/* Certified point lists in [0,1)                                    */
/* ---------------------------------------------------------------- */

typedef struct fo_points fo_points;

/* xi and x are numeric strings: decimals parse to the nearest double,
 * hex floats ("0x1.8p+0") parse exactly. x must be > 1, xi > 0. */
FO_API fo_status fo_points_power(const char* xi, const char* x, const fo_rule* rule,
                                 uint64_t n_points, double eps, fo_points** out);

/* Linear baseline frac(s_n * x); x may also be "p/q". Tolerance fixed at 2^-40. */
FO_API fo_status fo_points_linear(const char* x, const fo_rule* rule,
                                  uint64_t n_points, fo_points** out);

/* Seeded deterministic uniforms, radius 0, byte-stable across platforms. */
FO_API fo_status fo_points_iid(uint64_t seed, uint64_t n_points, fo_points** out);

FO_API fo_status fo_points_from_arrays(const double* values, const double* radii,
                                       uint64_t n, fo_points** out);

FO_API uint64_t fo_points_count(const fo_points* p);
FO_API double fo_points_value(const fo_points* p, uint64_t i);
FO_API double fo_points_radius(const fo_points* p, uint64_t i);
FO_API int64_t fo_points_exponent(const fo_points* p, uint64_t i);
FO_API uint64_t fo_points_precision_bits(const fo_points* p);
FO_API void fo_points_free(fo_points* p);

/* Working precision (bits) sufficient for per-point error < eps. */
FO_API fo_status fo_required_precision(const char* xi, const char* x, const fo_rule* rule,
                                       uint64_t n_points, double eps, uint64_t* bits);

/* Exactly representable dyadic draw in (max(a,1), b); hex-float string out. */
FO_API fo_status fo_sample_x(double a, double b, uint64_t seed, uint32_t mantissa_bits,
                             char* hex_buf, size_t cap);

/* ---------------------------------------------------------------- */
/* Discrepancy                                                       */
/* ---------------------------------------------------------------- */

typedef struct fo_disc_report {
    uint64_t n;
    double d_star;
    double d_extremal;
    double slack; /* propagated from point radii */
} fo_disc_report;

typedef struct fo_dyadic_report {
    uint32_t r;
    double d_small;      /* small intervals anchored at a*2^-R   */
    double d_large;      /* dyadic grid intervals                */
    double d_large_star; /* anchored dyadic grid intervals       */
} fo_dyadic_report;

typedef struct fo_sandwich_report {
    double d_star, d_extremal;
    double d_small, d_large, d_large_star;
    double slack;
    int holds;
} fo_sandwich_report;

typedef struct fo_count_report {
    uint64_t count;    /* half-open count with midpoint values */
    uint64_t count_lo; /* certainly inside                      */
    uint64_t count_hi; /* possibly inside                       */
    int ambiguous;
} fo_count_report;

FO_API fo_status fo_disc_star(const fo_points* p, double* out);
FO_API fo_status fo_disc_extremal(const fo_points* p, double* out);
/* O(N^2) oracle, n <= 4096. */
FO_API fo_status fo_disc_brute_force(const fo_points* p, double* star, double* extremal);
FO_API fo_status fo_disc_report_get(const fo_points* p, fo_disc_report* out);
FO_API fo_status fo_disc_dyadic(const fo_points* p, uint32_t r, fo_dyadic_report* out);
FO_API fo_status fo_disc_sandwich(const fo_points* p, uint32_t r, fo_sandwich_report* out);
FO_API fo_status fo_empirical_measure(const fo_points* p, double a, double b,
                                      fo_count_report* out);

/* ---------------------------------------------------------------- */
/* Period-1 mean-zero functions                                      */
/* ---------------------------------------------------------------- */

typedef struct fo_func fo_func;

FO_API fo_status fo_func_indicator(double a, double b, fo_func** out);
FO_API fo_status fo_func_trig(const double* cos_coef, const double* sin_coef,
                              uint32_t degree, fo_func** out);
FO_API double fo_func_eval(const fo_func* f, double t);
FO_API double fo_func_l2_norm(const fo_func* f);
FO_API double fo_func_variation(const fo_func* f);
FO_API fo_status fo_func_fourier(const fo_func* f, uint32_t degree,
                                 double* cos_out, double* sin_out);
FO_API fo_status fo_func_partial_sum(const fo_func* f, uint32_t degree, fo_func** out);
FO_API double fo_func_remainder_eval(const fo_func* f, uint32_t degree, double t);
FO_API void fo_func_free(fo_func* f);

/* ---------------------------------------------------------------- */
/* Oscillatory integrals                                             */
/* ---------------------------------------------------------------- */

enum { FO_PHASE_SINGLE = 0, FO_PHASE_PAIR = 1 };

typedef struct fo_phase {
    int kind;  /* FO_PHASE_SINGLE: xi*j*x^n.  FO_PHASE_PAIR: xi*(j*x^n +- k*x^m). */
    int sign;  /* +1 or -1, pair only */
    uint32_t j, k, n, m;
    double xi;
} fo_phase;

typedef struct fo_integral {
    double re, im;      /* integral of e^{2 pi i phase} */
    double abs_value;
    double error_bound; /* quadrature error estimate */
    uint64_t evaluations;
    int converged;
} fo_integral;

typedef struct fo_bound_check {
    double bound;
    double integral_abs;
    double error_bound;
    int pass;
} fo_bound_check;

typedef struct fo_partition {
    double x1;                 /* root of the phase derivative */
    double x2;                 /* root of the second derivative (0 when m = 1) */
    double band_lo, band_hi;   /* excluded band around x1 */
    double i1_lo, i1_hi;       /* pieces, empty encoded as lo > hi */
    double i2_lo, i2_hi;
    double i3_lo, i3_hi;
    double eta;
    double excluded_measure;
    double a, b;               /* ambient interval */
    double xi;
    uint32_t j, k, m, n;
} fo_partition;

FO_API fo_status fo_osc_integral(const fo_phase* ph, double alpha, double beta,
                                 double tol, fo_integral* out);
FO_API double fo_single_phase_bound(uint32_t j, double xi, uint32_t n, double alpha);
FO_API fo_status fo_single_phase_check(const fo_phase* ph, double alpha, double beta,
                                       double tol, fo_bound_check* out);
FO_API double fo_pair_phase_bound(double xi, uint32_t n, uint32_t m, double alpha);
FO_API fo_status fo_pair_phase_check(const fo_phase* ph, double alpha, double beta,
                                     double tol, fo_bound_check* out);
FO_API fo_status fo_partition_build(uint32_t j, uint32_t k, uint32_t m, uint32_t n,
                                    double xi, double eta, double a, double b,
                                    fo_partition* out);
FO_API fo_status fo_partition_check(const fo_partition* part, double alpha, double beta,
                                    double tol, fo_bound_check* out);

/* ---------------------------------------------------------------- */
/* Statistics                                                        */
/* ---------------------------------------------------------------- */

FO_API double fo_normal_cdf(double t);
FO_API fo_status fo_ks_distance(const double* samples, uint64_t n, double* out);
/* out receives max_m entries: N(1), ..., N(max_m) with N(M) = sum_{i<=M} (i^4+i). */
FO_API fo_status fo_nform_values(uint64_t max_m, uint64_t* out);
FO_API fo_status fo_nform_floor(uint64_t n, uint64_t* out);

typedef struct fo_ref_constants {
    double lil_power_orbit;
    double kesten;
    double fukuyama_base2;
    double chung_smirnov;
    double fukuyama_irrational;
} fo_ref_constants;

FO_API void fo_reference_constants(fo_ref_constants* out);

enum { FO_GRID_DYADIC = 0, FO_GRID_NFORM = 1 };
enum { FO_VARIANT_STAR = 0, FO_VARIANT_EXTREMAL = 1 };

typedef struct fo_lil fo_lil;

FO_API fo_status fo_lil_scan(const fo_points* p, int grid_kind, int variant, fo_lil** out);
FO_API uint64_t fo_lil_rows(const fo_lil* t);
FO_API uint64_t fo_lil_n(const fo_lil* t, uint64_t row);
FO_API double fo_lil_d_star(const fo_lil* t, uint64_t row);
FO_API double fo_lil_d_extremal(const fo_lil* t, uint64_t row);
FO_API double fo_lil_stat_star(const fo_lil* t, uint64_t row);
FO_API double fo_lil_stat_extremal(const fo_lil* t, uint64_t row);
FO_API double fo_lil_running_max(const fo_lil* t, uint64_t row);
FO_API int fo_lil_degenerate(const fo_lil* t);
FO_API void fo_lil_free(fo_lil* t);

typedef struct fo_clt fo_clt;

typedef struct fo_clt_params {
    const char* xi;
    double interval_a, interval_b;
    uint64_t n_terms;
    uint64_t n_draws; /* >= 100 */
    uint64_t seed;
    uint32_t mantissa_bits; /* 0 -> 53 */
    uint32_t threads;       /* 0 -> hardware */
} fo_clt_params;

FO_API fo_status fo_clt_sample(const fo_func* f, const fo_rule* rule,
                               const fo_clt_params* par, fo_clt** out);
FO_API uint64_t fo_clt_draws(const fo_clt* c);
FO_API double fo_clt_x(const fo_clt* c, uint64_t draw);
FO_API double fo_clt_t(const fo_clt* c, uint64_t draw);     /* sum/(||f|| sqrt N) */
FO_API double fo_clt_t_raw(const fo_clt* c, uint64_t draw); /* sum/sqrt N */
FO_API double fo_clt_ks(const fo_clt* c);
FO_API double fo_clt_ks_raw(const fo_clt* c);
FO_API void fo_clt_free(fo_clt* c);

/* ---------------------------------------------------------------- */
/* Experiment runner (the CLI maps argv onto this)                   */
/* ---------------------------------------------------------------- */

typedef struct fo_run_options {
    const char* out_dir; /* required for artifact-writing commands */
    uint32_t threads;    /* 0 -> hardware */
    int has_seed;
    uint64_t seed;
    int has_tolerance;
    double tolerance;
} fo_run_options;

/* command in { generate, discrepancy, dyadic, vdc, lemma5, lil, clt,
 * constants, selftest }; config_json may be NULL for commands without
 * required parameters. Writes artifacts under out_dir and a one-object
 * JSON summary into summary (truncated on FO_ESIZE). */
FO_API fo_status fo_run(const char* command, const char* config_json,
                        const fo_run_options* opt, char* summary, size_t cap);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FRACORBIT_H */
