#include "artifacts.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "discrepancy.hpp"
#include "ioutil.hpp"
#include "error.hpp"
#include "lilclt.hpp"
#include "oscillatory.hpp"
#include "periodic.hpp"
#include "rng.hpp"
#include "selftest.hpp"
#include "seqgen.hpp"

namespace fo::run {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

using io::fmt17;
using io::write_text_file;

fs::path prepare_out_dir(const Options& opt) {
    require(!opt.out_dir.empty(), FO_EINVAL, "this command requires --out <dir>");
    fs::path dir(opt.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    require(!ec, FO_EIO, "cannot create output directory " + dir.string());
    return dir;
}

// reproducibility header shared by every CSV artifact
std::string csv_header(const std::string& command, const json& resolved) {
    std::string h = "# fracorbit " + command + "\n";
    h += "# config: " + resolved.dump() + "\n";
    return h;
}

json parse_config(const std::string& config_json) {
    if (config_json.empty()) return json::object();
    json cfg = json::parse(config_json, nullptr, false);
    require(!cfg.is_discarded(), FO_EINVAL, "config is not valid JSON");
    require(cfg.is_object(), FO_EINVAL, "config must be a JSON object");
    return cfg;
}

std::uint64_t resolve_seed(const json& cfg, const Options& opt, std::uint64_t fallback) {
    if (opt.has_seed) return opt.seed;
    if (cfg.contains("seed")) {
        require(cfg["seed"].is_number_unsigned() || cfg["seed"].is_number_integer(), FO_EINVAL,
                "seed must be an integer");
        return cfg["seed"].get<std::uint64_t>();
    }
    return fallback;
}

double resolve_tolerance(const json& cfg, const Options& opt, double fallback) {
    if (opt.has_tolerance) return opt.tolerance;
    if (cfg.contains("tol")) return cfg["tol"].get<double>();
    return fallback;
}

seqgen::ExponentRule parse_rule(const json& cfg) {
    if (!cfg.contains("rule")) return seqgen::ExponentRule::identity();
    const json& r = cfg["rule"];
    require(r.is_object() && r.contains("kind"), FO_EINVAL, "rule needs a kind");
    std::string kind = r["kind"].get<std::string>();
    if (kind == "identity") return seqgen::ExponentRule::identity();
    if (kind == "affine")
        return seqgen::ExponentRule::affine(r.value("a", std::int64_t{1}),
                                            r.value("d", std::int64_t{1}));
    if (kind == "explicit") {
        require(r.contains("exponents") && r["exponents"].is_array(), FO_EINVAL,
                "explicit rule needs an exponents array");
        return seqgen::ExponentRule::explicit_list(
            r["exponents"].get<std::vector<std::int64_t>>());
    }
    fail(FO_EINVAL, "unknown rule kind '" + kind + "'");
}

json rule_to_json(const seqgen::ExponentRule& rule) {
    using Kind = seqgen::ExponentRule::Kind;
    switch (rule.kind()) {
    case Kind::identity:
        return {{"kind", "identity"}};
    case Kind::affine:
        return {{"kind", "affine"}, {"a", rule.affine_a()}, {"d", rule.affine_d()}};
    case Kind::explicit_list:
        return {{"kind", "explicit"}, {"exponents", rule.list()}};
    }
    return {};
}

Dyadic parse_dyadic(const json& cfg, const std::string& key, const std::string& fallback) {
    std::string text = fallback;
    if (cfg.contains(key)) {
        if (cfg[key].is_string())
            text = cfg[key].get<std::string>();
        else
            text = fmt17(cfg[key].get<double>());
    }
    auto d = Dyadic::parse(text);
    require(d.has_value(), FO_EINVAL, "cannot parse " + key + " value '" + text + "'");
    return *d;
}

periodic::PeriodicFunction parse_function(const json& cfg) {
    require(cfg.contains("f") && cfg["f"].is_object(), FO_EINVAL, "config needs an f object");
    const json& f = cfg["f"];
    std::string kind = f.value("kind", "indicator");
    if (kind == "indicator")
        return periodic::PeriodicFunction::indicator(f.value("a", 0.0), f.value("b", 0.5));
    if (kind == "trig") {
        require(f.contains("cos") && f.contains("sin"), FO_EINVAL,
                "trig function needs cos and sin arrays");
        return periodic::PeriodicFunction::trig(f["cos"].get<std::vector<double>>(),
                                                f["sin"].get<std::vector<double>>());
    }
    fail(FO_EINVAL, "unknown function kind '" + kind + "'");
}

seqgen::CertifiedPointList load_points_csv(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), FO_EIO, "cannot open points file " + path);
    seqgen::CertifiedPointList pts;
    pts.precision_bits = 53;
    std::string line;
    int value_col = -1, radius_col = -1;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!header_seen) {
            header_seen = true;
            bool any_name = false;
            for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
                if (cells[i] == "value") value_col = i, any_name = true;
                if (cells[i] == "radius") radius_col = i, any_name = true;
            }
            if (any_name) continue; // named header row
            value_col = 0;
            radius_col = cells.size() > 1 ? 1 : -1;
        }
        require(value_col >= 0 && value_col < static_cast<int>(cells.size()), FO_EINVAL,
                "points file lacks a value column");
        pts.values.push_back(std::stod(cells[value_col]));
        pts.radii.push_back(radius_col >= 0 && radius_col < static_cast<int>(cells.size())
                                ? std::stod(cells[radius_col])
                                : 0.0);
        pts.exponents.push_back(static_cast<std::int64_t>(pts.values.size()));
    }
    require(!pts.values.empty(), FO_EINVAL, "points file contains no data rows");
    return pts;
}

struct LoadedPoints {
    seqgen::CertifiedPointList points;
    json resolved; // source config with defaults applied
};

LoadedPoints load_points(const json& src, std::uint64_t seed, double eps) {
    require(src.is_object() && src.contains("kind"), FO_EINVAL, "source needs a kind");
    std::string kind = src["kind"].get<std::string>();
    LoadedPoints out;
    out.resolved = src;
    out.resolved["kind"] = kind;

    if (kind == "power") {
        auto rule = parse_rule(src);
        Dyadic xi = parse_dyadic(src, "xi", "1");
        std::uint64_t n = src.value("n_points", std::uint64_t{0});
        require(n >= 1, FO_EINVAL, "source needs n_points >= 1");
        Dyadic x;
        if (src.value("sample", false)) {
            double a = src.value("interval_a", 1.1);
            double b = src.value("interval_b", 2.1);
            unsigned mantissa = src.value("mantissa_bits", 53u);
            x = seqgen::sample_x(a, b, seed, mantissa);
            out.resolved["x"] = x.to_hex_string();
            auto spec = seqgen::OrbitSpec::make(std::move(xi), std::move(x), rule, a, b);
            out.points = seqgen::generate_power_orbit(spec, n, eps);
        } else {
            require(src.contains("x"), FO_EINVAL, "power source needs x or sample=true");
            x = parse_dyadic(src, "x", "1.5");
            auto spec = seqgen::OrbitSpec::make(std::move(xi), std::move(x), rule);
            out.points = seqgen::generate_power_orbit(spec, n, eps);
        }
        out.resolved["rule"] = rule_to_json(rule);
        out.resolved["eps"] = eps;
        return out;
    }
    if (kind == "linear") {
        auto rule = parse_rule(src);
        require(src.contains("x"), FO_EINVAL, "linear source needs x");
        std::uint64_t n = src.value("n_points", std::uint64_t{0});
        require(n >= 1, FO_EINVAL, "source needs n_points >= 1");
        out.points = seqgen::generate_linear_orbit(src["x"].get<std::string>(), rule, n);
        out.resolved["rule"] = rule_to_json(rule);
        return out;
    }
    if (kind == "iid") {
        std::uint64_t n = src.value("n_points", std::uint64_t{0});
        require(n >= 1, FO_EINVAL, "source needs n_points >= 1");
        out.points = seqgen::generate_iid(seed, n);
        out.resolved["seed"] = seed;
        return out;
    }
    if (kind == "csv") {
        require(src.contains("path"), FO_EINVAL, "csv source needs a path");
        out.points = load_points_csv(src["path"].get<std::string>());
        return out;
    }
    if (kind == "values") {
        require(src.contains("values") && src["values"].is_array(), FO_EINVAL,
                "values source needs a values array");
        auto v = src["values"].get<std::vector<double>>();
        require(!v.empty(), FO_EINVAL, "values array is empty");
        out.points.values = std::move(v);
        out.points.radii.assign(out.points.values.size(), 0.0);
        for (std::size_t i = 0; i < out.points.values.size(); ++i)
            out.points.exponents.push_back(static_cast<std::int64_t>(i + 1));
        out.points.precision_bits = 53;
        return out;
    }
    fail(FO_EINVAL, "unknown source kind '" + kind + "'");
}

std::string points_to_csv(const std::string& command, const json& resolved,
                          const seqgen::CertifiedPointList& pts) {
    std::string s = csv_header(command, resolved);
    s += "n,s_n,value,radius\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        s += std::to_string(i + 1) + "," + std::to_string(pts.exponents[i]) + "," +
             fmt17(pts.values[i]) + "," + fmt17(pts.radii[i]) + "\n";
    }
    return s;
}

/* ------------------------------ commands ------------------------------ */

json cmd_generate(const json& cfg, const Options& opt) {
    std::uint64_t seed = resolve_seed(cfg, opt, 1);
    double eps = opt.has_tolerance ? opt.tolerance : cfg.value("eps", seqgen::kDefaultEps);
    json src = cfg.contains("source") ? cfg["source"] : cfg;
    auto loaded = load_points(src, seed, eps);

    auto dir = prepare_out_dir(opt);
    json resolved = {{"command", "generate"}, {"source", loaded.resolved}, {"seed", seed}};
    write_text_file(dir / "orbit.csv", points_to_csv("generate", resolved, loaded.points));

    return {{"command", "generate"},
            {"n_points", loaded.points.size()},
            {"precision_bits", loaded.points.precision_bits},
            {"max_radius", loaded.points.max_radius()},
            {"artifact", (dir / "orbit.csv").string()},
            {"config", resolved}};
}

json disc_report_json(const seqgen::CertifiedPointList& pts, const json* dyadic_r) {
    auto rep = disc::report(pts);
    json out = {{"n", rep.n},
                {"d_star", rep.d_star},
                {"d_extremal", rep.d_extremal},
                {"slack", rep.slack}};
    if (dyadic_r) {
        std::uint32_t r = dyadic_r->get<std::uint32_t>();
        out["r"] = r;
        out["d_small"] = disc::dyadic_small_discrepancy(pts, r);
        auto large = disc::dyadic_large_discrepancy(pts, r);
        out["d_large"] = large.d_large;
        out["d_large_star"] = large.d_large_star;
    }
    return out;
}

json cmd_discrepancy(const json& cfg, const Options& opt, bool need_r) {
    std::uint64_t seed = resolve_seed(cfg, opt, 1);
    require(cfg.contains("source"), FO_EINVAL, "config needs a source object");
    auto loaded = load_points(cfg["source"], seed, cfg.value("eps", seqgen::kDefaultEps));

    json rcfg;
    const json* rp = nullptr;
    if (cfg.contains("r")) {
        rcfg = cfg["r"];
        rp = &rcfg;
    }
    require(!need_r || rp, FO_EINVAL, "dyadic command needs a level r");

    json report = disc_report_json(loaded.points, rp);
    if (rp) {
        auto sw = disc::sandwich_check(loaded.points, rcfg.get<std::uint32_t>());
        report["sandwich_holds"] = sw.holds;
    }
    json resolved = {{"command", need_r ? "dyadic" : "discrepancy"},
                     {"source", loaded.resolved},
                     {"seed", seed}};
    report["config"] = resolved;

    auto dir = prepare_out_dir(opt);
    write_text_file(dir / "report.json", report.dump(2) + "\n");
    if (report.contains("sandwich_holds") && !report["sandwich_holds"].get<bool>())
        fail(FO_EBOUND, "sandwich inequality violated; see report.json");
    return report;
}

double uniform_in(SplitMix64& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.next_unit();
}

json cmd_vdc(const json& cfg, const Options& opt) {
    std::uint64_t seed = resolve_seed(cfg, opt, 2);
    double tol = resolve_tolerance(cfg, opt, 1e-6);
    require(tol > 0.0 && tol <= 1e-3, FO_EINVAL, "tol must lie in (0, 1e-3]");
    const std::uint64_t n_cases = cfg.value("n_cases", std::uint64_t{40});
    const double A = cfg.value("interval_a", 1.1);
    const double B = cfg.value("interval_b", 2.1);
    require(A > 1.0 && B > A, FO_EINVAL, "interval must satisfy 1 < A < B");
    const std::uint32_t max_n = cfg.value("max_n", 8u);
    const std::uint32_t max_j = cfg.value("max_j", 6u);
    const double max_cycles = cfg.value("max_cycles", 1500.0);

    json resolved = {{"command", "vdc"},   {"seed", seed},   {"tol", tol},
                     {"n_cases", n_cases}, {"interval_a", A}, {"interval_b", B},
                     {"max_n", max_n},     {"max_j", max_j}};

    std::string csv = csv_header("vdc", resolved);
    csv += "case_id,kind,bound,integral_abs,error_bound,pass\n";
    std::uint64_t failures = 0;
    SplitMix64 rng(seed);

    auto draw_interval = [&](double& alpha, double& beta) {
        alpha = uniform_in(rng, A, B - 0.1);
        beta = uniform_in(rng, alpha + 0.05, B);
    };

    std::uint64_t case_id = 0;
    for (std::uint64_t c = 0; c < n_cases; ++c) {
        // one single-phase and one pair-phase case per round
        for (int kind = 0; kind < 2; ++kind) {
            double alpha = 0, beta = 0, xi = 0;
            osc::PhaseSpec ph;
            for (;;) {
                draw_interval(alpha, beta);
                xi = uniform_in(rng, 0.5, 2.0);
                std::uint32_t j = 1 + static_cast<std::uint32_t>(rng.next_bits(16)) % max_j;
                std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.next_bits(16)) % max_n;
                if (kind == 0) {
                    ph = osc::PhaseSpec::single(j, n, xi);
                } else {
                    std::uint32_t k = 1 + static_cast<std::uint32_t>(rng.next_bits(16)) % max_j;
                    std::uint32_t m = 1 + static_cast<std::uint32_t>(rng.next_bits(16)) % max_n;
                    if (m == n) continue;
                    ph = osc::PhaseSpec::pair(j, k, n, m, +1, xi);
                }
                if (std::abs(ph.cycles(beta)) + std::abs(ph.cycles(alpha)) <= max_cycles) break;
            }
            auto check = kind == 0 ? osc::single_phase_check(ph, alpha, beta, tol)
                                   : osc::pair_phase_check(ph, alpha, beta, tol);
            if (!check.pass) ++failures;
            csv += std::to_string(case_id++) + "," + (kind == 0 ? "single" : "pair") + "," +
                   fmt17(check.bound) + "," + fmt17(check.integral_abs) + "," +
                   fmt17(check.error_bound) + "," + (check.pass ? "1" : "0") + "\n";
        }
    }

    auto dir = prepare_out_dir(opt);
    write_text_file(dir / "vdc.csv", csv);
    json summary = {{"command", "vdc"},
                    {"cases", case_id},
                    {"failures", failures},
                    {"artifact", (dir / "vdc.csv").string()},
                    {"config", resolved}};
    if (failures > 0) {
        write_text_file(dir / "witness.json", summary.dump(2) + "\n");
        fail(FO_EBOUND, std::to_string(failures) + " oscillation bound cases failed; see vdc.csv");
    }
    return summary;
}

json partition_to_json(const osc::PartitionResult& part) {
    auto piece = [](double lo, double hi) -> json {
        if (lo > hi) return json::array();
        return json::array({lo, hi});
    };
    return {{"x1", part.x1},
            {"x2", part.x2},
            {"band", json::array({part.band_lo, part.band_hi})},
            {"i1", piece(part.i1_lo, part.i1_hi)},
            {"i2", piece(part.i2_lo, part.i2_hi)},
            {"i3", piece(part.i3_lo, part.i3_hi)},
            {"eta", part.eta},
            {"excluded_measure", part.excluded_measure},
            {"excluded_bound", 2.0 * part.b * part.eta}};
}

json cmd_lemma5(const json& cfg, const Options& opt) {
    std::uint64_t seed = resolve_seed(cfg, opt, 3);
    double tol = resolve_tolerance(cfg, opt, 1e-6);
    const std::uint32_t j = cfg.value("j", 1u), k = cfg.value("k", 3u);
    const std::uint32_t m = cfg.value("m", 1u), n = cfg.value("n", 2u);
    const double xi = cfg.value("xi", 1.0);
    const double eta = cfg.value("eta", 0.01);
    const double A = cfg.value("interval_a", 1.1);
    const double B = cfg.value("interval_b", 2.1);
    const std::uint64_t n_sub = cfg.value("n_subintervals", std::uint64_t{10});

    auto part = osc::build_partition(j, k, m, n, xi, eta, A, B);
    json resolved = {{"command", "lemma5"}, {"j", j},     {"k", k},
                     {"m", m},              {"n", n},     {"xi", xi},
                     {"eta", eta},          {"interval_a", A}, {"interval_b", B},
                     {"seed", seed},        {"tol", tol}};

    std::string csv = csv_header("lemma5", resolved);
    csv += "case_id,kind,bound,integral_abs,error_bound,pass\n";
    std::uint64_t failures = 0;

    struct Piece {
        double lo, hi;
    };
    std::vector<Piece> pieces;
    if (part.i1_hi - part.i1_lo > 1e-6) pieces.push_back({part.i1_lo, part.i1_hi});
    if (part.i2_hi - part.i2_lo > 1e-6) pieces.push_back({part.i2_lo, part.i2_hi});
    if (part.i3_hi - part.i3_lo > 1e-6) pieces.push_back({part.i3_lo, part.i3_hi});

    SplitMix64 rng(seed);
    std::uint64_t done = 0;
    for (std::uint64_t c = 0; c < n_sub && !pieces.empty(); ++c) {
        double alpha = 0, beta = 0;
        do { // redraw until the subinterval is usable
            const auto& p = pieces[rng.next() % pieces.size()];
            alpha = uniform_in(rng, p.lo, p.hi);
            beta = uniform_in(rng, alpha, p.hi);
        } while (beta - alpha < 1e-9);
        auto check = osc::partition_check(part, alpha, beta, tol);
        if (!check.pass) ++failures;
        csv += std::to_string(done++) + ",partition," + fmt17(check.bound) + "," +
               fmt17(check.integral_abs) + "," + fmt17(check.error_bound) + "," +
               (check.pass ? "1" : "0") + "\n";
    }

    auto dir = prepare_out_dir(opt);
    json pj = partition_to_json(part);
    pj["config"] = resolved;
    write_text_file(dir / "partition.json", pj.dump(2) + "\n");
    write_text_file(dir / "lemma5.csv", csv);

    json summary = {{"command", "lemma5"},
                    {"partition", partition_to_json(part)},
                    {"checks", done},
                    {"failures", failures},
                    {"config", resolved}};
    if (failures > 0)
        fail(FO_EBOUND, std::to_string(failures) + " partition bound cases failed; see lemma5.csv");
    return summary;
}

std::string lil_to_csv(const json& resolved, const stats::LilTrajectory& t) {
    std::string csv = csv_header("lil", resolved);
    csv += "N,d_star,d_extremal,L_star,L_extremal,running_max\n";
    for (const auto& row : t.rows) {
        csv += std::to_string(row.n) + "," + fmt17(row.d_star) + "," + fmt17(row.d_extremal) +
               "," + fmt17(row.stat_star) + "," + fmt17(row.stat_extremal) + "," +
               fmt17(row.running_max) + "\n";
    }
    return csv;
}

std::vector<std::uint64_t> parse_grid(const json& cfg, std::uint64_t n_max) {
    if (cfg.contains("grid") && cfg["grid"].is_array())
        return cfg["grid"].get<std::vector<std::uint64_t>>();
    std::string kind = cfg.value("grid", "dyadic");
    if (kind == "dyadic") return stats::dyadic_grid(n_max);
    if (kind == "nform") {
        std::vector<std::uint64_t> g;
        for (std::uint64_t v : stats::nform_values(256)) {
            if (v > n_max) break;
            if (v >= 16) g.push_back(v);
        }
        require(!g.empty(), FO_EINVAL, "no admissible grid values below n_max");
        return g;
    }
    fail(FO_EINVAL, "unknown grid kind '" + kind + "'");
}

json cmd_lil(const json& cfg, const Options& opt) {
    std::uint64_t seed = resolve_seed(cfg, opt, 4);
    require(cfg.contains("source"), FO_EINVAL, "config needs a source object");
    std::uint64_t n_max = cfg.value("n_max", std::uint64_t{0});
    require(n_max >= 16, FO_EINVAL, "n_max must be >= 16");
    auto variant = cfg.value("variant", "star") == std::string("extremal")
                       ? stats::Variant::extremal
                       : stats::Variant::star;
    const std::uint64_t draws = cfg.value("draws", std::uint64_t{1});
    require(draws >= 1, FO_EINVAL, "draws must be >= 1");

    json src = cfg["source"];
    src["n_points"] = n_max;
    json resolved = {{"command", "lil"},
                     {"seed", seed},
                     {"n_max", n_max},
                     {"variant", variant == stats::Variant::star ? "star" : "extremal"},
                     {"draws", draws},
                     {"source", src}};

    auto dir = prepare_out_dir(opt);
    auto grid = parse_grid(cfg, n_max);

    json trajs = json::array();
    std::vector<double> finals, ratios;
    bool any_degenerate = false;
    for (std::uint64_t d = 0; d < draws; ++d) {
        std::uint64_t draw_seed = draws == 1 ? seed : substream(seed, d).next();
        auto loaded = load_points(src, draw_seed, src.value("eps", seqgen::kDefaultEps));
        auto traj = stats::lil_scan(loaded.points, grid, variant);

        json tr = resolved;
        tr["draw"] = d;
        tr["source"] = loaded.resolved;
        char name[32];
        std::snprintf(name, sizeof name, "lil_%03" PRIu64 ".csv", d);
        std::string fname = draws == 1 ? "lil.csv" : name;
        write_text_file(dir / fname, lil_to_csv(tr, traj));

        const auto& last = traj.rows.back();
        double fin = variant == stats::Variant::star ? last.stat_star : last.stat_extremal;
        finals.push_back(fin);
        any_degenerate = any_degenerate || traj.degenerate;
        trajs.push_back({{"draw", d},
                         {"final_stat", fin},
                         {"running_max", last.running_max},
                         {"degenerate", traj.degenerate},
                         {"artifact", (dir / fname).string()}});
    }

    std::sort(finals.begin(), finals.end());
    double median = finals[finals.size() / 2];
    json summary = {{"command", "lil"},
                    {"median_final_stat", median},
                    {"degenerate", any_degenerate},
                    {"trajectories", trajs},
                    {"config", resolved}};
    write_text_file(dir / "lil_summary.json", summary.dump(2) + "\n");
    return summary;
}

json cmd_clt(const json& cfg, const Options& opt) {
    stats::CltParams par;
    par.seed = resolve_seed(cfg, opt, 5);
    par.xi = parse_dyadic(cfg, "xi", "1");
    par.interval_a = cfg.value("interval_a", 1.1);
    par.interval_b = cfg.value("interval_b", 2.1);
    par.n_terms = cfg.value("n_terms", std::uint64_t{1} << 12);
    par.n_draws = cfg.value("n_draws", std::uint64_t{2000});
    par.mantissa_bits = cfg.value("mantissa_bits", 53u);
    par.threads = opt.threads;

    auto f = cfg.contains("f") ? parse_function(cfg)
                               : periodic::PeriodicFunction::indicator(0.0, 0.5);
    auto rule = parse_rule(cfg);

    json resolved = {{"command", "clt"},
                     {"seed", par.seed},
                     {"interval_a", par.interval_a},
                     {"interval_b", par.interval_b},
                     {"n_terms", par.n_terms},
                     {"n_draws", par.n_draws},
                     {"mantissa_bits", par.mantissa_bits},
                     {"rule", rule_to_json(rule)},
                     {"f", cfg.contains("f") ? cfg["f"]
                                             : json{{"kind", "indicator"}, {"a", 0.0}, {"b", 0.5}}}};

    auto sample = stats::clt_sample(f, rule, par);

    std::string csv = csv_header("clt", resolved);
    csv += "draw,x,T\n";
    for (std::uint64_t i = 0; i < par.n_draws; ++i)
        csv += std::to_string(i) + "," + fmt17(sample.x_values[i]) + "," +
               fmt17(sample.t_norm[i]) + "\n";

    auto dir = prepare_out_dir(opt);
    write_text_file(dir / "clt.csv", csv);

    auto consts = stats::reference_constants();
    json summary = {{"command", "clt"},
                    {"ks_distance", sample.ks_norm},
                    {"ks_distance_raw", sample.ks_raw},
                    {"n_terms", par.n_terms},
                    {"n_draws", par.n_draws},
                    {"constants",
                     {{"lil_power_orbit", consts.lil_power_orbit},
                      {"kesten", consts.kesten},
                      {"fukuyama_base2", consts.fukuyama_base2},
                      {"chung_smirnov", consts.chung_smirnov},
                      {"fukuyama_irrational", consts.fukuyama_irrational}}},
                    {"artifact", (dir / "clt.csv").string()},
                    {"config", resolved}};
    write_text_file(dir / "clt_summary.json", summary.dump(2) + "\n");
    return summary;
}

json cmd_constants(const Options& opt) {
    auto c = stats::reference_constants();
    json summary = {{"command", "constants"},
                    {"lil_power_orbit", c.lil_power_orbit},
                    {"kesten", c.kesten},
                    {"fukuyama_base2", c.fukuyama_base2},
                    {"chung_smirnov", c.chung_smirnov},
                    {"fukuyama_irrational", c.fukuyama_irrational}};
    if (!opt.out_dir.empty()) {
        auto dir = prepare_out_dir(opt);
        write_text_file(dir / "constants.json", summary.dump(2) + "\n");
    }
    return summary;
}

} // namespace

std::string run_command(const std::string& command, const std::string& config_json,
                        const Options& opt) {
    json cfg = parse_config(config_json);
    json summary;
    if (command == "generate")
        summary = cmd_generate(cfg, opt);
    else if (command == "discrepancy")
        summary = cmd_discrepancy(cfg, opt, false);
    else if (command == "dyadic")
        summary = cmd_discrepancy(cfg, opt, true);
    else if (command == "vdc")
        summary = cmd_vdc(cfg, opt);
    else if (command == "lemma5")
        summary = cmd_lemma5(cfg, opt);
    else if (command == "lil")
        summary = cmd_lil(cfg, opt);
    else if (command == "clt")
        summary = cmd_clt(cfg, opt);
    else if (command == "constants")
        summary = cmd_constants(opt);
    else if (command == "selftest")
        summary = selftest::run(cfg, opt);
    else
        fail(FO_EINVAL, "unknown command '" + command + "'");
    return summary.dump();
}

} // namespace fo::run
