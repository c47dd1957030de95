// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "krillsim/geartrain.hpp"
#include "krillsim/kinematics.hpp"
#include "krillsim/scaling.hpp"
#include "krillsim/schedule.hpp"
#include "krillsim/units.hpp"
#include "krillsim/validation.hpp"
#include "krillsim/waveforms.hpp"
#include "oracles.hpp"

using namespace krillsim;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& name, const std::string& detail) {
    std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

void gear_sizing() {
    const auto t0 = Clock::now();
    const double rp = geartrain::primitive_radius(0.032, 4);
    const double rel = std::abs(rp - 2.0 / 375.0) / (2.0 / 375.0);
    const double dt = seconds_since(t0);
    report(1, rel <= 1e-15 && dt < 1.0, "gear sizing", "r_p = " + fmt("%.17g", rp) + " m, rel err " + fmt("%.1e", rel));
}

void reynolds_presets() {
    using scaling::ReConvention;
    const auto p = scaling::krill_preset();
    const double re = scaling::reynolds(p, ReConvention::Dimensional);
    const bool preset_ok = p.stroke_amplitude == 1.553 && p.frequency == 5.7 &&
                           p.kinematic_viscosity == 1.0e-6;
    auto as_written = p;
    as_written.stroke_amplitude = 1.553;
    as_written.pleopod_length = 5.82e-3;
    const auto scaled = scaling::scale_swimmer(as_written, 10.0, ReConvention::AsWritten);
    const double re0 = scaling::reynolds(as_written, ReConvention::AsWritten);
    const double re1 = scaling::reynolds(scaled, ReConvention::AsWritten);
    const bool ok = preset_ok && std::abs(re - 600.0) <= 1e-9 && re0 == re1 &&
                    std::abs(scaled.frequency - 0.57) < 1e-15;
    report(2, ok, "reynolds presets",
           "dimensional Re = " + fmt("%.12f", re) + ", as-written Re " + fmt("%.6f", re0) + " -> " +
               fmt("%.6f", re1) + " at " + fmt("%.4g", scaled.frequency) + " Hz");
}

void kinematic_closure() {
    const kinematics::AppendageGeometry g;
    const auto cfg = waveforms::default_config();
    double closure = 0.0, radius = 0.0;
    for (int i = 1; i <= cfg.n_appendages; ++i) {
        const auto traj = kinematics::tip_trajectory(g, waveforms::alpha_profile(i, cfg),
                                                     waveforms::beta_profile(i, cfg), 1000);
        closure = std::max(closure, (traj.samples.front().position - traj.samples.back().position).norm());
        for (const auto& s : traj.samples) radius = std::max(radius, s.position.norm());
    }
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ang(0.0, 180.0);
    double oracle_err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double a = ang(rng), b = ang(rng);
        const auto tip = kinematics::pleopod_tip(g, a, b);
        const auto ref = oracle::two_link_tip(g.x1, g.x2, a, b);
        oracle_err = std::max({oracle_err, std::abs(tip.x() - ref[0]), std::abs(tip.y() - ref[1])});
    }
    const bool ok = closure < 1e-9 && radius <= 0.0815 && oracle_err <= 1e-12;
    report(3, ok, "kinematic closure",
           "closure " + fmt("%.2e", closure) + " m, max radius " + fmt("%.6f", radius) + " m, oracle err " +
               fmt("%.2e", oracle_err) + " m");
}

void gear_chain_algebra() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> r(0.002, 0.02), a(-2 * kPi, 2 * kPi);
    double cascade_err = 0.0, inverse_err = 0.0;
    bool locked = true;
    for (int i = 0; i < 100; ++i) {
        std::vector<double> radii(2 + i % 5);
        for (auto& x : radii) x = r(rng);
        const auto c = geartrain::GearChain::from_radii(radii);
        const double psi = a(rng), arm = a(rng);
        const double fwd = geartrain::chain_forward(psi, arm, c);
        double prev = psi;
        for (std::size_t k = 0; k + 1 < radii.size(); ++k) {
            prev = geartrain::epicyclic_step(prev, arm, radii[k], radii[k + 1]);
        }
        cascade_err = std::max(cascade_err, std::abs(fwd - prev));
        inverse_err = std::max(inverse_err, std::abs(geartrain::chain_inverse(fwd, arm, c) - psi));
        locked = locked && geartrain::chain_forward(arm, arm, c) == arm;
    }
    const bool ok = cascade_err <= 1e-12 && inverse_err <= 1e-12 && locked;
    report(4, ok, "gear-chain algebra",
           "cascade err " + fmt("%.2e", cascade_err) + " rad, inverse err " + fmt("%.2e", inverse_err) +
               " rad, locked train " + (locked ? "exact" : "broken"));
}

// Measured sinusoid of the given pk-pk; reference shifted by a constant.
double percent_for(double offset, double pkpk) {
    validation::AngleTrace measured, reference;
    for (int i = 0; i <= 1000; ++i) {
        const double t = i / 1000.0;
        const double v = 0.5 * pkpk * std::sin(2 * kPi * t);
        measured.t.push_back(t);
        measured.angle.push_back(v);
        reference.t.push_back(t);
        reference.angle.push_back(v + offset);
    }
    return validation::compare_traces(measured, reference).percent_error;
}

void validation_metric() {
    const double p1 = percent_for(3.5, 44.4), p2 = percent_for(2.1, 77.0);
    const bool derived = std::abs(p1 - 7.88) <= 0.15 && std::abs(p2 - 2.73) <= 0.15;
    const bool rounded = std::abs(p1 - 8.0) <= 0.15 && std::abs(p2 - 2.8) <= 0.15;
    report(5, derived && rounded, "validation metric",
           fmt("%.3f", p1) + "% (rounded 8%), " + fmt("%.3f", p2) + "% (rounded 2.8%)");
}

void marker_round_trip() {
    const auto cfg = waveforms::default_config();
    const auto ap = waveforms::alpha_profile(3, cfg), bp = waveforms::beta_profile(3, cfg);
    const kinematics::AppendageGeometry g;
    const int n = 10000;
    const double period = ap.period();
    validation::MarkerTrace markers;
    validation::AngleTrace alpha_ref, beta_ref;
    for (int i = 0; i < n; ++i) {
        const double t = period * i / n;
        const double a = waveforms::sample(ap, t), b = waveforms::sample(bp, t);
        markers.push_back(validation::markers_for_pose(t, a, b, g.x1, g.x2));
        alpha_ref.t.push_back(t);
        alpha_ref.angle.push_back(a);
        beta_ref.t.push_back(t);
        beta_ref.angle.push_back(b);
    }
    const auto t0 = Clock::now();
    const auto angles = validation::angles_from_markers(markers);
    const auto ma = validation::compare_traces(angles.alpha, alpha_ref);
    const auto mb = validation::compare_traces(angles.beta, beta_ref);
    const double dt = seconds_since(t0);
    const double err = std::max(ma.max_abs_diff, mb.max_abs_diff);
    const double pct = std::max(ma.percent_error, mb.percent_error);
    const bool ok = err < 1e-9 && fmt("%.3f", pct) == "0.000" && dt < 5.0;
    report(6, ok, "marker round-trip",
           "max err " + fmt("%.2e", err) + " deg, error " + fmt("%.3f", pct) + "%, 10000 frames in " +
               fmt("%.3f", dt) + " s");
}

void schedule_integrity() {
    const auto cfg = waveforms::default_config();
    const auto chains = schedule::default_chains(cfg.n_appendages);
    const auto s = schedule::build_schedule(cfg, chains, 1.0 / cfg.frequency);
    double err = 0.0;
    for (const auto& row : s.rows) {
        const auto poses = schedule::reconstruct_pose(s, row, chains);
        for (int i = 1; i <= cfg.n_appendages; ++i) {
            const double beta = waveforms::sample(waveforms::beta_profile(i, cfg), row.t);
            err = std::max(err, std::abs(poses[static_cast<std::size_t>(i - 1)].second - beta));
        }
    }
    const bool ok = s.rows.size() == 176 && err <= 1e-9;
    report(7, ok, "schedule integrity",
           std::to_string(s.rows.size()) + " rows, beta reconstruction err " + fmt("%.2e", err) + " deg");
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Runs every subcommand into `dir`; returns stdout concatenated with all
// non-manifest output files (manifests carry a timestamp).
std::string cli_pass(const fs::path& dir) {
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ostringstream out, err;
    const auto run = [&](std::vector<std::string> args) {
        if (cli::run(args, out, err) != 0) throw std::runtime_error("cli failed: " + err.str());
    };
    const auto d = dir.string();
    run({"--out", d + "/sim", "--quiet", "simulate"});
    run({"--out", d + "/sched", "--quiet", "schedule"});
    run({"--out", d + "/gears", "gears"});
    run({"--out", d + "/scale", "scale"});
    run({"--out", d + "/val", "validate", "--markers", d + "/sim/markers_p1.csv", "--reference",
         d + "/sim/angles_p1.csv", "--column", "alpha_deg"});
    run({"--out", d + "/plot/loops.svg", "--quiet", "plot", "--title", "tips", d + "/sim/trajectory_p1.csv",
         d + "/sim/trajectory_p5.csv"});
    run({"--out", d + "/plot/angles.svg", "--quiet", "plot", d + "/sim/angles_p2.csv"});

    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().string().find("manifest.json") == std::string::npos) {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::string all = out.str();
    for (const auto& f : files) all += fs::relative(f, dir).generic_string() + "\n" + slurp(f);
    return all;
}

void determinism() {
    const auto base = fs::temp_directory_path() / "krillsim_acceptance";
    std::string a, b;
    try {
        a = cli_pass(base / "run1");
        b = cli_pass(base / "run2");
    } catch (const std::exception& e) {
        report(8, false, "determinism", e.what());
        return;
    }
    report(8, !a.empty() && a == b, "determinism",
           std::to_string(a.size()) + " bytes of outputs " + (a == b ? "identical" : "differ"));
    fs::remove_all(base);
}

}  // namespace

int main() {
    gear_sizing();
    reynolds_presets();
    kinematic_closure();
    gear_chain_algebra();
    validation_metric();
    marker_round_trip();
    schedule_integrity();
    determinism();
    std::printf("%s: %d failure(s)\n", failures == 0 ? "ALL PASS" : "FAILED", failures);
    return failures == 0 ? 0 : 1;
}
