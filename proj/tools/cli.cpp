#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "krillsim/config.hpp"
#include "krillsim/csv.hpp"
#include "krillsim/error.hpp"
#include "krillsim/geartrain.hpp"
#include "krillsim/kinematics.hpp"
#include "krillsim/scaling.hpp"
#include "krillsim/schedule.hpp"
#include "krillsim/svg_plot.hpp"
#include "krillsim/units.hpp"
#include "krillsim/validation.hpp"
#include "krillsim/waveforms.hpp"

#ifndef KRILLSIM_VERSION
#define KRILLSIM_VERSION "0.0.0"
#endif

namespace krillsim::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct GlobalOptions {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    bool quiet = false;
};

struct Context {
    GlobalOptions global;
    std::ostream& out;
    std::ostream& err;

    void info(const std::string& msg) const {
        if (!global.quiet) out << msg << '\n';
    }
    void warn(const std::string& msg) const {
        if (!global.quiet) err << "warning: " << msg << '\n';
    }
};

config::SimConfig resolve_config(const Context& ctx) {
    if (ctx.global.config.empty()) return config::SimConfig{};
    return config::load_config(ctx.global.config);
}

fs::path output_dir(const Context& ctx) {
    fs::path dir = ctx.global.out.empty() ? fs::path(".") : fs::path(ctx.global.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir.string(), "cannot create directory: " + ec.message());
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError(path.string(), "cannot open for writing");
    f << content;
    f.flush();
    if (!f) throw IoError(path.string(), "write failed");
}

std::string read_file(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError(path.string(), "cannot open for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

ordered_json config_json(const config::SimConfig& cfg) {
    ordered_json j;
    j["n_appendages"] = cfg.gait.n_appendages;
    j["frequency_hz"] = cfg.gait.frequency;
    j["lag_cycles"] = cfg.gait.lag;
    j["alpha_mean_deg"] = cfg.gait.alpha_mean;
    j["beta_mean_deg"] = cfg.gait.beta_mean;
    j["alpha_pkpk_deg"] = cfg.gait.alpha_pkpk;
    j["beta_pkpk_deg"] = cfg.gait.beta_pkpk;
    j["alpha_beta_phase_cycles"] = cfg.gait.alpha_beta_phase;
    j["x1_m"] = cfg.x1;
    j["x2_m"] = cfg.x2;
    j["zeta_deg"] = cfg.zeta;
    ordered_json chains = ordered_json::array();
    for (const auto& c : cfg.chains()) chains.push_back(c.radii());
    j["gear_radii_m"] = chains;
    j["gamma_max_deg"] = cfg.gamma.max_angle;
    j["gamma_ramp_cycles"] = cfg.gamma.ramp_width;
    j["gamma_phase_cycles"] = cfg.gamma.abduction_phase;
    j["dt_ms"] = cfg.schedule.dt * 1000.0;
    j["amplification"] = cfg.schedule.amplification;
    j["amplify_alpha"] = cfg.schedule.amplify_alpha;
    j["amplify_beta"] = cfg.schedule.amplify_beta;
    j["servo_min_deg"] = cfg.schedule.servo_min;
    j["servo_max_deg"] = cfg.schedule.servo_max;
    return j;
}

// The manifest is the only output that carries a timestamp.
void write_manifest(const Context& ctx, const fs::path& path, const std::string& subcommand, ordered_json settings,
                    const std::vector<std::string>& inputs, const std::vector<fs::path>& outputs) {
    ordered_json j;
    j["tool"] = "krillsim";
    j["version"] = KRILLSIM_VERSION;
    j["subcommand"] = subcommand;
    j["config_file"] = ctx.global.config;
    j["seed"] = ctx.global.seed;
    j["settings"] = std::move(settings);
    j["inputs"] = inputs;
    ordered_json outs = ordered_json::array();
    for (const auto& p : outputs) outs.push_back(p.generic_string());
    j["outputs"] = outs;
    j["generated_utc"] = utc_now();
    write_file(path, j.dump(2) + "\n");
}

// Report numbers: 12 significant digits. CSV outputs keep full precision.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    std::size_t samples = 200;
    std::optional<double> lag;
    std::optional<double> frequency;
};

int cmd_simulate(const Context& ctx, const SimulateOptions& opt) {
    auto cfg = resolve_config(ctx);
    if (opt.lag) cfg.gait.lag = *opt.lag;
    if (opt.frequency) cfg.gait.frequency = *opt.frequency;
    cfg.validate();
    const auto dir = output_dir(ctx);

    std::vector<fs::path> written;
    for (int i = 1; i <= cfg.gait.n_appendages; ++i) {
        const auto geom = cfg.geometry(i);
        const auto ap = waveforms::alpha_profile(i, cfg.gait);
        const auto bp = waveforms::beta_profile(i, cfg.gait);
        const auto traj = kinematics::tip_trajectory(geom, ap, bp, opt.samples);

        std::ostringstream traj_csv, angle_csv, marker_csv;
        kinematics::write_trajectory_csv(traj_csv, traj);

        angle_csv << "t,alpha_deg,beta_deg,gamma_deg\n";
        validation::MarkerTrace markers;
        for (const auto& s : traj.samples) {
            const double alpha = waveforms::sample(ap, s.t);
            const double beta = waveforms::sample(bp, s.t);
            const double gamma = kinematics::gamma_profile(kinematics::stroke_phase(ap, s.t), cfg.gamma);
            csv::write_row(angle_csv, {s.t, alpha, beta, gamma});
            markers.push_back(validation::markers_for_pose(s.t, alpha, beta, geom.x1, geom.x2));
        }
        validation::write_markers_csv(marker_csv, markers);

        const std::string tag = "p" + std::to_string(i);
        const auto traj_path = dir / ("trajectory_" + tag + ".csv");
        const auto angle_path = dir / ("angles_" + tag + ".csv");
        const auto marker_path = dir / ("markers_" + tag + ".csv");
        write_file(traj_path, traj_csv.str());
        write_file(angle_path, angle_csv.str());
        write_file(marker_path, marker_csv.str());
        written.insert(written.end(), {traj_path, angle_path, marker_path});
    }

    ordered_json settings = config_json(cfg);
    settings["samples"] = opt.samples;
    write_manifest(ctx, dir / "manifest.json", "simulate", settings, {}, written);
    ctx.info("wrote " + std::to_string(written.size()) + " files to " + dir.generic_string());
    return 0;
}

// ---------------------------------------------------------------- gears

struct GearsOptions {
    double x1 = 0.032;
    int n_gears = 4;
    int teeth = 12;
};

int cmd_gears(const Context& ctx, const GearsOptions& opt) {
    const double rp = geartrain::primitive_radius(opt.x1, opt.n_gears);
    const double m = geartrain::modulus(rp, opt.teeth);
    if (opt.teeth < geartrain::kMinTeeth) {
        ctx.warn(std::to_string(opt.teeth) + " teeth is below the minimum of " +
                 std::to_string(geartrain::kMinTeeth));
    }
    const auto chain = geartrain::GearChain::equal(opt.n_gears, rp);
    const double ratio = geartrain::composite_ratio(chain);

    std::ostringstream report;
    report << "x1_m               " << num(opt.x1) << '\n'
           << "n_gears            " << opt.n_gears << '\n'
           << "teeth              " << opt.teeth << '\n'
           << "primitive_radius_m " << num(rp) << '\n'
           << "modulus_m          " << num(m) << '\n'
           << "composite_ratio    " << num(ratio) << '\n'
           << "rotation           " << (ratio < 0 ? "counter-rotating (negative)" : "co-rotating (positive)")
           << '\n';
    ctx.out << report.str();

    if (!ctx.global.out.empty()) {
        const auto dir = output_dir(ctx);
        write_file(dir / "gears.txt", report.str());
        ordered_json settings{{"x1_m", opt.x1}, {"n_gears", opt.n_gears}, {"teeth", opt.teeth}};
        write_manifest(ctx, dir / "manifest.json", "gears", settings, {}, {dir / "gears.txt"});
    }
    return 0;
}

// ---------------------------------------------------------------- schedule

struct ScheduleCliOptions {
    std::optional<double> duration;
    std::optional<double> dt_ms;
    std::optional<double> amp;
    std::optional<double> lag;
};

int cmd_schedule(const Context& ctx, const ScheduleCliOptions& opt) {
    auto cfg = resolve_config(ctx);
    if (opt.dt_ms) cfg.schedule.dt = *opt.dt_ms / 1000.0;
    if (opt.amp) cfg.schedule.amplification = *opt.amp;
    if (opt.lag) cfg.gait.lag = *opt.lag;
    cfg.validate();
    const double duration = opt.duration.value_or(1.0 / cfg.gait.frequency);

    const auto s = schedule::build_schedule(cfg.gait, cfg.chains(), duration, cfg.schedule);
    const auto dir = output_dir(ctx);
    const auto path = dir / "schedule.csv";
    schedule::export_schedule(s, path);

    ordered_json settings = config_json(cfg);
    settings["duration_s"] = duration;
    write_manifest(ctx, dir / "manifest.json", "schedule", settings, {}, {path});
    ctx.info("wrote " + std::to_string(s.rows.size()) + " rows to " + path.generic_string());
    return 0;
}

// ---------------------------------------------------------------- scale

struct ScaleOptions {
    std::string preset = "krill";
    double factor = 10.0;
    std::optional<double> theta;
    std::optional<double> frequency;
    std::optional<double> length;
    std::optional<double> nu;
};

int cmd_scale(const Context& ctx, const ScaleOptions& opt) {
    using scaling::ReConvention;
    scaling::SwimmerParams base = scaling::krill_preset();
    if (opt.preset == "robot") {
        base = scaling::scale_swimmer(base, 10.0, ReConvention::AsWritten);
    } else if (opt.preset != "krill") {
        throw DomainError("unknown preset '" + opt.preset + "' (expected krill or robot)");
    }
    if (opt.theta) base.stroke_amplitude = *opt.theta;
    if (opt.frequency) base.frequency = *opt.frequency;
    if (opt.length) base.pleopod_length = *opt.length;
    if (opt.nu) base.kinematic_viscosity = *opt.nu;
    base.validate();

    std::ostringstream report;
    report << "preset               " << opt.preset << '\n'
           << "theta_rad            " << num(base.stroke_amplitude) << '\n'
           << "frequency_hz         " << num(base.frequency) << '\n'
           << "length_m             " << num(base.pleopod_length) << '\n'
           << "nu_m2_s              " << num(base.kinematic_viscosity) << '\n'
           << "tip_speed_m_s        " << num(scaling::tip_speed(base)) << '\n'
           << "length_factor        " << num(opt.factor) << '\n'
           << "body_re_display      " << num(scaling::kKrillBodyRe) << '\n'
           << "convention,re,scaled_frequency_hz,scaled_re\n";
    for (auto conv : {ReConvention::AsWritten, ReConvention::Dimensional}) {
        const auto scaled = scaling::scale_swimmer(base, opt.factor, conv);
        report << scaling::to_string(conv) << ',' << num(scaling::reynolds(base, conv)) << ','
               << num(scaled.frequency) << ',' << num(scaling::reynolds(scaled, conv)) << '\n';
    }
    ctx.out << report.str();

    if (!ctx.global.out.empty()) {
        const auto dir = output_dir(ctx);
        write_file(dir / "scale.txt", report.str());
        ordered_json settings{{"preset", opt.preset},
                              {"factor", opt.factor},
                              {"theta_rad", base.stroke_amplitude},
                              {"frequency_hz", base.frequency},
                              {"length_m", base.pleopod_length},
                              {"nu_m2_s", base.kinematic_viscosity}};
        write_manifest(ctx, dir / "manifest.json", "scale", settings, {}, {dir / "scale.txt"});
    }
    return 0;
}

// ---------------------------------------------------------------- validate

struct ValidateOptions {
    std::string measured;
    std::string markers;
    std::string angle = "alpha";
    std::string reference;
    std::string column = "angle_deg";
    bool cycle = false;
};

validation::AngleTrace load_reference(const std::string& path, const std::string& column) {
    std::istringstream in(read_file(path));
    if (column == "angle_deg") return validation::read_angle_csv(in, path);
    return validation::read_angle_column(in, path, column);
}

int cmd_validate(const Context& ctx, const ValidateOptions& opt) {
    if (opt.measured.empty() == opt.markers.empty()) {
        throw DomainError("give exactly one of --measured or --markers");
    }
    validation::AngleTrace measured;
    std::vector<std::string> inputs;
    if (!opt.markers.empty()) {
        std::istringstream in(read_file(opt.markers));
        const auto angles = validation::angles_from_markers(validation::read_markers_csv(in, opt.markers));
        if (opt.angle == "alpha") {
            measured = angles.alpha;
        } else if (opt.angle == "beta") {
            measured = angles.beta;
        } else {
            throw DomainError("--angle must be alpha or beta");
        }
        inputs.push_back(opt.markers);
    } else {
        std::istringstream in(read_file(opt.measured));
        measured = validation::read_angle_csv(in, opt.measured);
        inputs.push_back(opt.measured);
    }
    auto reference = load_reference(opt.reference, opt.column);
    inputs.push_back(opt.reference);
    if (opt.cycle) measured = validation::extract_cycle(measured);

    const auto m = validation::compare_traces(measured, reference);
    ordered_json metrics{{"mean_abs_diff_deg", m.mean_abs_diff},   {"max_abs_diff_deg", m.max_abs_diff},
                         {"percent_error", m.percent_error},       {"pkpk_measured_deg", m.pkpk_measured},
                         {"pkpk_reference_deg", m.pkpk_reference}, {"n_points", m.n_points}};

    std::ostringstream report;
    report << std::fixed << std::setprecision(6);
    report << "mean_abs_diff_deg  " << m.mean_abs_diff << '\n'
           << "max_abs_diff_deg   " << m.max_abs_diff << '\n'
           << "percent_error      " << std::setprecision(3) << m.percent_error << '\n'
           << std::setprecision(6) << "pkpk_measured_deg  " << m.pkpk_measured << '\n'
           << "pkpk_reference_deg " << m.pkpk_reference << '\n'
           << "n_points           " << m.n_points << '\n';
    ctx.out << report.str();

    if (!ctx.global.out.empty()) {
        const auto dir = output_dir(ctx);
        const auto metrics_path = dir / "metrics.json";
        const auto trace_path = dir / "measured.csv";
        write_file(metrics_path, metrics.dump(2) + "\n");
        std::ostringstream trace_csv;
        validation::write_angle_csv(trace_csv, measured);
        write_file(trace_path, trace_csv.str());
        ordered_json settings{{"angle", opt.angle}, {"column", opt.column}, {"cycle", opt.cycle}};
        write_manifest(ctx, dir / "manifest.json", "validate", settings, inputs, {metrics_path, trace_path});
    }
    return 0;
}

// ---------------------------------------------------------------- plot

struct PlotOptions {
    std::vector<std::string> inputs;
    std::string title;
};

int cmd_plot(const Context& ctx, const PlotOptions& opt) {
    if (ctx.global.out.empty()) throw DomainError("plot needs --out FILE.svg");
    plot::Chart chart;
    chart.title = opt.title;
    bool trajectory = true;
    bool multi = opt.inputs.size() > 1;
    std::vector<csv::Table> tables;
    for (const auto& path : opt.inputs) {
        std::istringstream in(read_file(path));
        tables.push_back(csv::read_table(in, path));
        const auto& h = tables.back().header;
        if (h.size() < 2) throw ParseError(path, 1, "need at least two columns");
        if (h != std::vector<std::string>{"t", "x", "y"}) trajectory = false;
    }
    if (trajectory) {
        chart.equal_aspect = true;
        chart.x_label = "x (m)";
        chart.y_label = "y (m)";
    } else {
        chart.x_label = tables.empty() ? "" : tables.front().header.front();
        chart.y_label = "value";
    }
    for (std::size_t f = 0; f < tables.size(); ++f) {
        const auto& tab = tables[f];
        const std::string stem = fs::path(opt.inputs[f]).stem().string();
        if (tab.rows.empty()) continue;
        if (trajectory) {
            plot::Series s{stem, {}, {}};
            for (const auto& r : tab.rows) {
                s.x.push_back(r[1]);
                s.y.push_back(r[2]);
            }
            chart.series.push_back(std::move(s));
            continue;
        }
        for (std::size_t c = 1; c < tab.header.size(); ++c) {
            plot::Series s{multi ? stem + ":" + tab.header[c] : tab.header[c], {}, {}};
            for (const auto& r : tab.rows) {
                s.x.push_back(r[0]);
                s.y.push_back(r[c]);
            }
            chart.series.push_back(std::move(s));
        }
    }
    const fs::path svg_path = ctx.global.out;
    if (svg_path.has_parent_path()) fs::create_directories(svg_path.parent_path());
    write_file(svg_path, plot::render_svg(chart));
    ordered_json settings{{"title", opt.title}, {"mode", trajectory ? "trajectory" : "series"}};
    write_manifest(ctx, fs::path(svg_path.string() + ".manifest.json"), "plot", settings, opt.inputs, {svg_path});
    ctx.info("wrote " + svg_path.generic_string());
    return 0;
}

std::string one_line(std::string msg) {
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    return msg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kinematics and control toolkit for metachronal swimmer mechanisms", "krillsim"};
    app.set_version_flag("--version", KRILLSIM_VERSION);
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--config", global.config, "Key-value config file")->check(CLI::ExistingFile);
    app.add_option("--out", global.out, "Output directory (plot: output SVG file)");
    app.add_option("--seed", global.seed, "Seed recorded in the manifest for randomized runs");
    app.add_flag("--quiet", global.quiet, "Suppress progress messages and warnings");

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Tip trajectories and joint angles for every appendage");
    simulate->add_option("--samples", sim.samples, "Samples per stroke cycle")->check(CLI::Range(2, 1000000));
    simulate->add_option("--lag", sim.lag, "Inter-appendage lag in cycles");
    simulate->add_option("--frequency", sim.frequency, "Beat frequency in Hz");

    GearsOptions gears;
    auto* gears_cmd = app.add_subcommand("gears", "Gear sizing report");
    gears_cmd->add_option("--x1", gears.x1, "Protopodite length in meters");
    gears_cmd->add_option("--n-gears", gears.n_gears, "Gears on the protopodite");
    gears_cmd->add_option("--teeth", gears.teeth, "Teeth per gear");

    ScheduleCliOptions sched;
    auto* schedule_cmd = app.add_subcommand("schedule", "Timed servo command table");
    schedule_cmd->add_option("--duration", sched.duration, "Seconds to cover (default one cycle)");
    schedule_cmd->add_option("--dt-ms", sched.dt_ms, "Command period in milliseconds (default 10)");
    schedule_cmd->add_option("--amp", sched.amp, "Transmission amplification (default 2.5)");
    schedule_cmd->add_option("--lag", sched.lag, "Inter-appendage lag in cycles");

    ScaleOptions scale;
    auto* scale_cmd = app.add_subcommand("scale", "Reynolds number and dynamic scaling");
    scale_cmd->add_option("--preset", scale.preset, "krill or robot");
    scale_cmd->add_option("--factor", scale.factor, "Length scale factor");
    scale_cmd->add_option("--theta", scale.theta, "Stroke amplitude in radians (peak-to-peak)");
    scale_cmd->add_option("--freq", scale.frequency, "Beat frequency in Hz");
    scale_cmd->add_option("--length", scale.length, "Pleopod length in meters");
    scale_cmd->add_option("--nu", scale.nu, "Kinematic viscosity in m^2/s");

    ValidateOptions val;
    auto* validate = app.add_subcommand("validate", "Compare a measured angle trace with a reference");
    validate->add_option("--measured", val.measured, "Measured trace CSV (t,angle_deg)");
    validate->add_option("--markers", val.markers, "Marker CSV (t,bx1,by1,bx2,by2,ax,ay,bx,by,tx,ty)");
    validate->add_option("--angle", val.angle, "Angle recovered from markers: alpha or beta");
    validate->add_option("--reference", val.reference, "Reference trace CSV")->required();
    validate->add_option("--column", val.column, "Reference column (default angle_deg)");
    validate->add_flag("--cycle", val.cycle, "Compare only the cycle between the first two maxima");

    PlotOptions plot_opt;
    auto* plot_cmd = app.add_subcommand("plot", "Render CSV data to SVG");
    plot_cmd->add_option("inputs", plot_opt.inputs, "CSV files")->required();
    plot_cmd->add_option("--title", plot_opt.title, "Chart title");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    Context ctx{global, out, err};
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        ctx.global = global;
        if (*simulate) return cmd_simulate(ctx, sim);
        if (*gears_cmd) return cmd_gears(ctx, gears);
        if (*schedule_cmd) return cmd_schedule(ctx, sched);
        if (*scale_cmd) return cmd_scale(ctx, scale);
        if (*validate) return cmd_validate(ctx, val);
        if (*plot_cmd) return cmd_plot(ctx, plot_opt);
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << KRILLSIM_VERSION << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << one_line(e.what()) << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "error: parse: " << one_line(e.what()) << '\n';
        return 1;
    } catch (const IoError& e) {
        err << "error: io: " << one_line(e.what()) << '\n';
        return 1;
    } catch (const DomainError& e) {
        err << "error: domain: " << one_line(e.what()) << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: internal: " << one_line(e.what()) << '\n';
        return 1;
    }
}

}  // namespace krillsim::cli
