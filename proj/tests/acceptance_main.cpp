// Acceptance driver: runs the full selftest through the public C API,
// prints one line per criterion, then reruns the whole suite with a
// different worker count and byte-compares every CSV artifact.
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "fracorbit.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in.good()) return {};
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

fo_status run_selftest(const fs::path& dir, unsigned threads) {
    fo_run_options opt{};
    std::string out = dir.string();
    opt.out_dir = out.c_str();
    opt.threads = threads;
    return fo_run("selftest", nullptr, &opt, nullptr, 0);
}

// relative path -> bytes for every CSV under root (summaries carry
// timings and absolute paths, so only the data artifacts are compared)
std::map<std::string, std::string> csv_snapshot(const fs::path& root) {
    std::map<std::string, std::string> snap;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
        snap[fs::relative(entry.path(), root).string()] = read_file(entry.path());
    }
    return snap;
}

} // namespace

int main() {
    const fs::path base = fs::current_path() / "acceptance_out";
    std::error_code ec;
    fs::remove_all(base, ec);

    const fs::path run_a = base / "threads2";
    const fs::path run_b = base / "threads1";

    std::printf("== acceptance: full selftest (threads=2) ==\n");
    fo_status rc_a = run_selftest(run_a, 2);

    json summary = json::parse(read_file(run_a / "selftest_summary.json"), nullptr, false);
    if (summary.is_discarded()) {
        std::fprintf(stderr, "FATAL: selftest summary missing (%s: %s)\n",
                     fo_status_name(rc_a), fo_last_error());
        return 2;
    }

    int failed = 0;
    for (const auto& c : summary["criteria"]) {
        const bool pass = c["pass"].get<bool>();
        if (!pass) ++failed;
        std::printf("[%s] criterion %d: %s (%.2fs) — %s\n", pass ? "PASS" : "FAIL",
                    c["id"].get<int>(), c["name"].get<std::string>().c_str(),
                    c["seconds"].get<double>(), c["detail"].get<std::string>().c_str());
    }

    std::printf("== acceptance: full selftest rerun (threads=1) for artifact comparison ==\n");
    fo_status rc_b = run_selftest(run_b, 1);
    bool identical = false;
    if (rc_b == FO_OK || rc_b == FO_EBOUND) {
        auto snap_a = csv_snapshot(run_a);
        auto snap_b = csv_snapshot(run_b);
        identical = !snap_a.empty() && snap_a == snap_b;
    }
    std::printf("[%s] criterion 9 (full suite): selftest artifacts byte-identical across "
                "thread counts (%zu CSV files)\n",
                identical ? "PASS" : "FAIL", csv_snapshot(run_a).size());
    if (!identical) ++failed;

    if (failed > 0) {
        std::printf("acceptance: %d criteria FAILED\n", failed);
        return 1;
    }
    std::printf("acceptance: all criteria passed\n");
    return 0;
}
