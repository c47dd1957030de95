#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "krillsim/csv.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = krillsim::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("krillsim_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::size_t line_count(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

}  // namespace

TEST_CASE("help and version") {
    auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("simulate") != std::string::npos);
    r = run({"--version"});
    CHECK(r.code == 0);
    CHECK_FALSE(r.out.empty());
}

TEST_CASE("usage errors are a single line with exit code 2") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"frobnicate"}, {"gears", "--n-gears", "four"}, {"validate", "--measured", "x.csv"}}) {
        const auto r = run(args);
        CHECK(r.code == 2);
        CHECK(r.err.rfind("error: usage: ", 0) == 0);
        CHECK(line_count(r.err) == 1);
    }
}

TEST_CASE("gears report") {
    auto r = run({"gears"});
    CHECK(r.code == 0);
    CHECK(r.out.find("primitive_radius_m 0.00533333333333") != std::string::npos);
    CHECK(r.out.find("composite_ratio    -1") != std::string::npos);
    CHECK(r.out.find("counter-rotating") != std::string::npos);
    CHECK(r.err.empty());

    r = run({"gears", "--n-gears", "3"});
    CHECK(r.out.find("primitive_radius_m 0.008\n") != std::string::npos);
    CHECK(r.out.find("co-rotating") != std::string::npos);

    r = run({"gears", "--teeth", "10"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning: ") == 0);
    r = run({"--quiet", "gears", "--teeth", "10"});
    CHECK(r.err.empty());

    r = run({"gears", "--n-gears", "1"});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("error: domain: ", 0) == 0);
    CHECK(line_count(r.err) == 1);
}

TEST_CASE("scale report") {
    const auto r = run({"scale"});
    CHECK(r.code == 0);
    CHECK(r.out.find("dimensional,600,0.057,600") != std::string::npos);
    CHECK(r.out.find("as-written,") != std::string::npos);
    CHECK(r.out.find(",0.57,") != std::string::npos);
    CHECK(run({"scale", "--preset", "shrimp"}).code == 1);
}

TEST_CASE("simulate writes per-appendage files") {
    const auto dir = scratch("simulate");
    const auto r = run({"--out", dir.string(), "--quiet", "simulate", "--samples", "50"});
    REQUIRE(r.code == 0);
    for (int i = 1; i <= 5; ++i) {
        const auto tag = "p" + std::to_string(i);
        const auto traj = slurp(dir / ("trajectory_" + tag + ".csv"));
        CHECK(traj.rfind("t,x,y\n", 0) == 0);
        CHECK(line_count(traj) == 51);
        CHECK(fs::exists(dir / ("angles_" + tag + ".csv")));
        CHECK(fs::exists(dir / ("markers_" + tag + ".csv")));
    }
    const auto manifest = slurp(dir / "manifest.json");
    CHECK(manifest.find("\"subcommand\": \"simulate\"") != std::string::npos);
    CHECK(manifest.find("\"samples\": 50") != std::string::npos);
}

TEST_CASE("zero lag gives phase-identical appendages") {
    const auto dir = scratch("lag0");
    const auto cfg = dir / "same.cfg";
    write(cfg,
          "alpha_pkpk_deg = [90, 90, 90, 90, 90]\n"
          "beta_pkpk_deg = [60, 60, 60, 60, 60]\n"
          "gear_teeth = [24, 24, 24, 24]\n");
    REQUIRE(run({"--config", cfg.string(), "--out", dir.string(), "--quiet", "simulate", "--lag", "0"}).code == 0);
    const auto first = slurp(dir / "trajectory_p1.csv");
    for (int i = 2; i <= 5; ++i) CHECK(slurp(dir / ("trajectory_p" + std::to_string(i) + ".csv")) == first);
}

TEST_CASE("zero amplitude collapses the trajectory to a point") {
    const auto dir = scratch("still");
    const auto cfg = dir / "still.cfg";
    write(cfg, "alpha_pkpk_deg = [0, 0, 0, 0, 0]\nbeta_pkpk_deg = [0, 0, 0, 0, 0]\n");
    REQUIRE(run({"--config", cfg.string(), "--out", dir.string(), "--quiet", "simulate", "--samples", "20"}).code ==
            0);
    std::ifstream in(dir / "trajectory_p3.csv");
    const auto table = krillsim::csv::read_table(in, "trajectory_p3.csv");
    REQUIRE(table.rows.size() == 20);
    for (const auto& row : table.rows) {
        CHECK(row[1] == table.rows[0][1]);
        CHECK(row[2] == table.rows[0][2]);
    }
}

TEST_CASE("schedule row count") {
    const auto dir = scratch("schedule");
    auto r = run({"--out", dir.string(), "schedule", "--duration", "1", "--dt-ms", "10"});
    REQUIRE(r.code == 0);
    const auto text = slurp(dir / "schedule.csv");
    CHECK(line_count(text) == 101);
    CHECK(text.rfind("t,a1_alpha,a1_psi,", 0) == 0);
    CHECK(r.out.find("wrote 100 rows") != std::string::npos);

    r = run({"--out", dir.string(), "--quiet", "schedule"});
    REQUIRE(r.code == 0);
    CHECK(line_count(slurp(dir / "schedule.csv")) == 177);

    r = run({"--out", dir.string(), "schedule", "--amp", "1"});
    CHECK(r.code == 1);
    CHECK(r.err.rfind("error: domain: servo command out of range: appendage ", 0) == 0);
}

TEST_CASE("validate simulated markers against simulated angles") {
    const auto dir = scratch("validate");
    REQUIRE(run({"--out", dir.string(), "--quiet", "simulate"}).code == 0);
    const auto out = dir / "val";
    for (const std::string angle : {"alpha", "beta"}) {
        const auto r = run({"--out", out.string(), "validate", "--markers", (dir / "markers_p2.csv").string(),
                            "--angle", angle, "--reference", (dir / "angles_p2.csv").string(), "--column",
                            angle + "_deg"});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("percent_error      0.000\n") != std::string::npos);
        CHECK(fs::exists(out / "metrics.json"));
        CHECK(fs::exists(out / "measured.csv"));
    }
}

TEST_CASE("validate error paths") {
    const auto dir = scratch("validate_err");
    write(dir / "a.csv", "t,angle_deg\n0,1\n1,oops\n");
    write(dir / "b.csv", "t,angle_deg\n0,1\n1,2\n");
    auto r = run({"validate", "--measured", (dir / "a.csv").string(), "--reference", (dir / "b.csv").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("error: parse: ") == 0);
    CHECK(r.err.find("a.csv:3:") != std::string::npos);
    CHECK(line_count(r.err) == 1);

    r = run({"validate", "--measured", (dir / "missing.csv").string(), "--reference", (dir / "b.csv").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("error: io: ") == 0);

    r = run({"validate", "--reference", (dir / "b.csv").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("error: domain: ") == 0);
}

TEST_CASE("config errors surface with their line") {
    const auto dir = scratch("config");
    write(dir / "bad.cfg", "lag_cycles = 0.1\nspeed = 3\n");
    const auto r = run({"--config", (dir / "bad.cfg").string(), "simulate"});
    CHECK(r.code == 1);
    CHECK(r.err.find("bad.cfg:2:") != std::string::npos);
}

TEST_CASE("plot renders deterministic svg") {
    const auto dir = scratch("plot");
    REQUIRE(run({"--out", dir.string(), "--quiet", "simulate", "--samples", "40"}).code == 0);
    const auto svg1 = dir / "loops1.svg";
    const auto svg2 = dir / "loops2.svg";
    const std::vector<std::string> inputs = {(dir / "trajectory_p1.csv").string(),
                                             (dir / "trajectory_p5.csv").string()};
    for (const auto& svg : {svg1, svg2}) {
        std::vector<std::string> args = {"--out", svg.string(), "--quiet", "plot", "--title", "loops"};
        args.insert(args.end(), inputs.begin(), inputs.end());
        REQUIRE(run(args).code == 0);
    }
    const auto text = slurp(svg1);
    CHECK(text == slurp(svg2));
    CHECK(fs::exists(fs::path(svg1.string() + ".manifest.json")));

    const auto angles = dir / "angles.svg";
    REQUIRE(run({"--out", angles.string(), "--quiet", "plot", (dir / "angles_p1.csv").string()}).code == 0);
    CHECK(slurp(angles).find("gamma_deg") != std::string::npos);

    CHECK(run({"plot", (dir / "angles_p1.csv").string()}).code == 1);
}
