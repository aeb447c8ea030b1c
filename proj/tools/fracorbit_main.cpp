// fracorbit command-line runner: argv -> JSON config -> fo_run().
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fracorbit.h"

namespace {

using nlohmann::json;

int status_to_exit(fo_status s) {
    switch (s) {
    case FO_OK:
        return 0;
    case FO_EINVAL:
    case FO_EIO:
    case FO_ESIZE:
        return 2; // configuration / environment
    default:
        return 1; // bound, invariant, precision or budget violation
    }
}

void print_constants(const json& summary) {
    std::printf("lil_power_orbit=%.9f kesten=%.9f fukuyama_base2=%.9f chung_smirnov=%.9f "
                "fukuyama_irrational=%.9f\n",
                summary["lil_power_orbit"].get<double>(), summary["kesten"].get<double>(),
                summary["fukuyama_base2"].get<double>(),
                summary["chung_smirnov"].get<double>(),
                summary["fukuyama_irrational"].get<double>());
}

void print_selftest(const json& summary) {
    for (const auto& c : summary["criteria"]) {
        std::printf("[%s] criterion %d: %s (%.2fs) — %s\n",
                    c["pass"].get<bool>() ? "PASS" : "FAIL", c["id"].get<int>(),
                    c["name"].get<std::string>().c_str(), c["seconds"].get<double>(),
                    c["detail"].get<std::string>().c_str());
    }
    std::printf("%s\n", summary["all_pass"].get<bool>() ? "selftest: all criteria passed"
                                                        : "selftest: FAILURES present");
}

void print_summary(const std::string& command, const json& summary) {
    if (command == "constants") {
        print_constants(summary);
        return;
    }
    if (command == "selftest") {
        print_selftest(summary);
        return;
    }
    if (command == "clt") {
        std::printf("clt: ks_distance=%.6f ks_raw=%.6f draws=%" PRIu64 " terms=%" PRIu64 "\n",
                    summary["ks_distance"].get<double>(),
                    summary["ks_distance_raw"].get<double>(),
                    summary["n_draws"].get<std::uint64_t>(),
                    summary["n_terms"].get<std::uint64_t>());
        return;
    }
    if (command == "lil") {
        std::printf("lil: median_final_stat=%.6f trajectories=%zu\n",
                    summary["median_final_stat"].get<double>(),
                    summary["trajectories"].size());
        return;
    }
    if (command == "discrepancy" || command == "dyadic") {
        std::printf("%s: n=%" PRIu64 " d_star=%.9f d_extremal=%.9f\n", command.c_str(),
                    summary["n"].get<std::uint64_t>(), summary["d_star"].get<double>(),
                    summary["d_extremal"].get<double>());
        return;
    }
    if (command == "generate") {
        std::printf("generate: n=%" PRIu64 " precision_bits=%" PRIu64 " max_radius=%.3g\n",
                    summary["n_points"].get<std::uint64_t>(),
                    summary["precision_bits"].get<std::uint64_t>(),
                    summary["max_radius"].get<double>());
        return;
    }
    std::printf("%s: done\n", command.c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracorbit — fractional-part orbit laboratory"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    double tolerance = 0.0;
    auto* seed_opt = app.add_option("--seed", seed, "master seed (overrides config)");
    auto* tol_opt = app.add_option("--tolerance", tolerance, "tolerance override");
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "output directory for artifacts");
    app.add_option("--threads", threads, "worker cap (0 = hardware)");

    static const char* kCommands[] = {"generate", "discrepancy", "dyadic", "vdc", "lemma5",
                                      "lil",      "clt",         "constants", "selftest"};
    for (const char* name : kCommands) app.add_subcommand(name, "");

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    std::string config;
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in.good()) {
            std::fprintf(stderr, "error: cannot read config file %s\n", config_path.c_str());
            return 2;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        config = ss.str();
    }

    fo_run_options opt{};
    opt.out_dir = out_dir.empty() ? nullptr : out_dir.c_str();
    opt.threads = threads;
    opt.has_seed = seed_opt->count() > 0 ? 1 : 0;
    opt.seed = seed;
    opt.has_tolerance = tol_opt->count() > 0 ? 1 : 0;
    opt.tolerance = tolerance;

    std::vector<char> summary(1 << 22);
    fo_status rc = fo_run(command.c_str(), config.empty() ? nullptr : config.c_str(), &opt,
                          summary.data(), summary.size());

    if (rc == FO_OK) {
        json parsed = json::parse(summary.data(), nullptr, false);
        if (!parsed.is_discarded()) print_summary(command, parsed);
        return 0;
    }

    // On selftest bound failures the per-criterion summary is on disk.
    if (command == "selftest" && rc == FO_EBOUND && !out_dir.empty()) {
        std::ifstream in(out_dir + "/selftest_summary.json");
        if (in.good()) {
            json parsed = json::parse(in, nullptr, false);
            if (!parsed.is_discarded()) print_selftest(parsed);
        }
    }
    std::fprintf(stderr, "error (%s): %s\n", fo_status_name(rc), fo_last_error());
    return status_to_exit(rc);
}
