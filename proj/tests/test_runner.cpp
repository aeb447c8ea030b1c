#include "doctest.h"

#include <filesystem>

#include "artifacts.hpp"
#include "error.hpp"
#include "ioutil.hpp"
#include "json.hpp"

using namespace fo;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "fracorbit_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

run::Options opts(const fs::path& dir, unsigned threads = 0) {
    run::Options o;
    o.out_dir = dir.string();
    o.threads = threads;
    return o;
}

} // namespace

TEST_CASE("generate writes a reproducible orbit artifact") {
    auto dir = fresh_dir("generate");
    std::string cfg = R"({"kind":"power","xi":"1","x":"1.5","n_points":3})";
    auto summary = json::parse(run::run_command("generate", cfg, opts(dir)));
    CHECK(summary["n_points"] == 3);
    auto csv = io::read_file_bytes(dir / "orbit.csv");
    CHECK(csv.find("n,s_n,value,radius") != std::string::npos);
    CHECK(csv.find("1,1,0.5,0") != std::string::npos);
    CHECK(csv.find("# config:") != std::string::npos);

    run::run_command("generate", cfg, opts(dir));
    CHECK(io::read_file_bytes(dir / "orbit.csv") == csv);
}

TEST_CASE("discrepancy report on an equidistant values source") {
    auto dir = fresh_dir("disc");
    std::string cfg = R"({"source":{"kind":"values","values":[0.0,0.25,0.5,0.75]}})";
    auto summary = json::parse(run::run_command("discrepancy", cfg, opts(dir)));
    CHECK(summary["d_star"].get<double>() == doctest::Approx(0.25));
    CHECK(summary["n"] == 4);
    CHECK(fs::exists(dir / "report.json"));
}

TEST_CASE("dyadic report carries the level fields and sandwich verdict") {
    auto dir = fresh_dir("dyadic");
    std::string cfg =
        R"({"source":{"kind":"iid","n_points":500},"r":4,"seed":11})";
    auto summary = json::parse(run::run_command("dyadic", cfg, opts(dir)));
    CHECK(summary["r"] == 4);
    CHECK(summary["d_large_star"].get<double>() <= summary["d_large"].get<double>() + 1e-15);
    CHECK(summary["sandwich_holds"] == true);
}

TEST_CASE("malformed configs are rejected before any artifact is written") {
    auto dir = fresh_dir("badcfg");
    bool einval = false;
    try {
        run::run_command("discrepancy", "{not json", opts(dir));
    } catch (const Error& e) {
        einval = e.code() == FO_EINVAL;
    }
    CHECK(einval);
    CHECK(!fs::exists(dir / "report.json"));

    CHECK_THROWS_AS(run::run_command("nonsense", "", opts(dir)), Error);
    CHECK_THROWS_AS(
        run::run_command("dyadic",
                         R"({"source":{"kind":"values","values":[0.5]}})", opts(dir)),
        Error); // missing r
}

TEST_CASE("orbit dumps round-trip through the csv source") {
    auto dir = fresh_dir("roundtrip");
    run::run_command("generate",
                     R"({"kind":"iid","n_points":64,"seed":21})", opts(dir));
    std::string cfg = std::string(R"({"source":{"kind":"csv","path":")") +
                      (dir / "orbit.csv").string() + R"("}})";
    auto summary = json::parse(run::run_command("discrepancy", cfg, opts(dir)));
    CHECK(summary["n"] == 64);

    // equidistant four-point file
    io::write_text_file(dir / "four.csv", "value\n0\n0.25\n0.5\n0.75\n");
    std::string cfg2 = std::string(R"({"source":{"kind":"csv","path":")") +
                       (dir / "four.csv").string() + R"("}})";
    auto s2 = json::parse(run::run_command("discrepancy", cfg2, opts(dir)));
    CHECK(s2["d_star"].get<double>() == doctest::Approx(0.25));
}

TEST_CASE("constants summary") {
    run::Options o; // no out dir needed
    auto summary = json::parse(run::run_command("constants", "", o));
    CHECK(summary["lil_power_orbit"].get<double>() == doctest::Approx(0.7071067811865476));
    CHECK(summary["kesten"].get<double>() == doctest::Approx(0.20264236728467555));
    CHECK(summary["fukuyama_base2"].get<double>() == doctest::Approx(1.0183501544346312));
}

TEST_CASE("vdc and lemma5 runners produce case CSVs") {
    auto dir = fresh_dir("vdc");
    auto summary = json::parse(
        run::run_command("vdc", R"({"n_cases":3,"seed":5})", opts(dir)));
    CHECK(summary["failures"] == 0);
    CHECK(summary["cases"] == 6);
    auto csv = io::read_file_bytes(dir / "vdc.csv");
    CHECK(csv.find("case_id,kind,bound,integral_abs,error_bound,pass") != std::string::npos);

    auto dir2 = fresh_dir("lemma5");
    auto s2 = json::parse(run::run_command(
        "lemma5", R"({"j":1,"k":3,"m":1,"n":2,"eta":0.05,"n_subintervals":4,"seed":6})",
        opts(dir2)));
    CHECK(s2["failures"] == 0);
    CHECK(fs::exists(dir2 / "partition.json"));
    auto pj = json::parse(io::read_file_bytes(dir2 / "partition.json"));
    CHECK(pj["x1"].get<double>() == doctest::Approx(1.5));
}

TEST_CASE("lil and clt runners emit the documented CSV schemas") {
    auto dir = fresh_dir("lil");
    auto summary = json::parse(run::run_command(
        "lil",
        R"({"source":{"kind":"iid"},"n_max":256,"seed":7})", opts(dir)));
    CHECK(summary["median_final_stat"].get<double>() > 0.0);
    auto csv = io::read_file_bytes(dir / "lil.csv");
    CHECK(csv.find("N,d_star,d_extremal,L_star,L_extremal,running_max") != std::string::npos);

    auto dir2 = fresh_dir("clt");
    auto s2 = json::parse(run::run_command(
        "clt", R"({"n_terms":64,"n_draws":100,"seed":8})", opts(dir2, 2)));
    CHECK(s2["ks_distance"].get<double>() >= 0.0);
    CHECK(s2["constants"]["chung_smirnov"].get<double>() ==
          doctest::Approx(0.7071067811865476));
    auto clt_csv = io::read_file_bytes(dir2 / "clt.csv");
    CHECK(clt_csv.find("draw,x,T") != std::string::npos);
}

TEST_CASE("nform grid and tolerance overrides through the runner") {
    auto dir = fresh_dir("nform");
    auto summary = json::parse(run::run_command(
        "lil",
        R"({"source":{"kind":"iid"},"n_max":2000,"grid":"nform","seed":9})", opts(dir)));
    CHECK(summary["median_final_stat"].get<double>() > 0.0);
    auto csv = io::read_file_bytes(dir / "lil.csv");
    CHECK(csv.find("\n20,") != std::string::npos);   // N(2)
    CHECK(csv.find("\n104,") != std::string::npos);  // N(3)

    auto dir2 = fresh_dir("tol");
    auto o = opts(dir2);
    o.has_tolerance = true;
    o.tolerance = 1e-5;
    auto s2 = json::parse(run::run_command("vdc", R"({"n_cases":2,"seed":10})", o));
    CHECK(s2["config"]["tol"].get<double>() == 1e-5);
    CHECK(s2["failures"] == 0);
}

TEST_CASE("quick selftest passes end to end") {
    auto dir = fresh_dir("selftest_quick");
    auto summary =
        json::parse(run::run_command("selftest", R"({"quick":true})", opts(dir, 2)));
    CHECK(summary["all_pass"] == true);
    CHECK(summary["criteria"].size() == 9);
    CHECK(fs::exists(dir / "selftest_summary.json"));
}
