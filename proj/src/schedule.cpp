#include "krillsim/schedule.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "krillsim/csv.hpp"
#include "krillsim/kinematics.hpp"

namespace krillsim::schedule {

namespace {

std::string describe_limit(int appendage, double t, const std::string& channel, double value) {
    std::ostringstream os;
    os << "servo command out of range: appendage " << appendage << ", t=" << csv::format_number(t)
       << " s, " << channel << "=" << csv::format_number(value) << " deg";
    return os.str();
}

}  // namespace

ServoLimitError::ServoLimitError(int appendage, double t, std::string channel, double value)
    : DomainError(describe_limit(appendage, t, channel, value)),
      appendage_(appendage),
      t_(t),
      channel_(std::move(channel)),
      value_(value) {}

void ScheduleOptions::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
    if (!(amplification > 0.0) || !std::isfinite(amplification)) throw DomainError("amplification must be positive");
    if (!(servo_min < servo_max)) throw DomainError("servo_min must be below servo_max");
}

std::vector<geartrain::GearChain> default_chains(int n_appendages, double x1) {
    std::vector<geartrain::GearChain> chains;
    for (int i = 1; i <= n_appendages; ++i) {
        // The two posterior protopodites are short and carry three gears.
        const int k = (n_appendages >= 5 && i >= 4) ? 3 : 4;
        chains.push_back(geartrain::GearChain::equal(k, geartrain::primitive_radius(x1, k)));
    }
    return chains;
}

std::size_t sample_count(double duration, double dt) {
    if (!(duration > 0.0) || !std::isfinite(duration)) throw DomainError("duration must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
    // Absorb rounding in duration / dt so that exact multiples stay half-open.
    const double ratio = duration / dt;
    return static_cast<std::size_t>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio)));
}

ServoSchedule build_schedule(const waveforms::MetachronalConfig& cfg,
                             const std::vector<geartrain::GearChain>& chains,
                             double duration,
                             const ScheduleOptions& opt) {
    cfg.validate();
    opt.validate();
    if (chains.size() != static_cast<std::size_t>(cfg.n_appendages)) {
        throw DomainError("need one gear chain per appendage");
    }
    const std::size_t n_rows = sample_count(duration, opt.dt);

    std::vector<waveforms::StrokeProfile> alphas;
    std::vector<waveforms::StrokeProfile> betas;
    for (int i = 1; i <= cfg.n_appendages; ++i) {
        alphas.push_back(waveforms::alpha_profile(i, cfg));
        betas.push_back(waveforms::beta_profile(i, cfg));
    }

    ServoSchedule s;
    s.dt = opt.dt;
    s.amplification = opt.amplification;
    s.amplify_alpha = opt.amplify_alpha;
    s.amplify_beta = opt.amplify_beta;
    s.n_appendages = cfg.n_appendages;
    s.rows.reserve(n_rows);

    const double alpha_gain = opt.amplify_alpha ? opt.amplification : 1.0;
    const double beta_gain = opt.amplify_beta ? opt.amplification : 1.0;
    for (std::size_t r = 0; r < n_rows; ++r) {
        ScheduleRow row{static_cast<double>(r) * opt.dt, {}};
        row.commands.reserve(alphas.size());
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            const double alpha = waveforms::sample(alphas[i], row.t);
            const double beta = waveforms::sample(betas[i], row.t);
            const auto servo = geartrain::servo_angles_for_pose(alpha, beta, chains[i]);
            ServoCommand cmd{servo.alpha / alpha_gain, servo.psi1 / beta_gain};
            const int appendage = static_cast<int>(i) + 1;
            if (cmd.alpha < opt.servo_min || cmd.alpha > opt.servo_max) {
                throw ServoLimitError(appendage, row.t, "alpha", cmd.alpha);
            }
            if (cmd.psi1 < opt.servo_min || cmd.psi1 > opt.servo_max) {
                throw ServoLimitError(appendage, row.t, "psi1", cmd.psi1);
            }
            row.commands.push_back(cmd);
        }
        s.rows.push_back(std::move(row));
    }
    return s;
}

std::vector<std::pair<double, double>> reconstruct_pose(const ServoSchedule& s,
                                                        const ScheduleRow& row,
                                                        const std::vector<geartrain::GearChain>& chains) {
    if (chains.size() != row.commands.size()) throw DomainError("need one gear chain per appendage");
    const double alpha_gain = s.amplify_alpha ? s.amplification : 1.0;
    const double beta_gain = s.amplify_beta ? s.amplification : 1.0;
    std::vector<std::pair<double, double>> out;
    out.reserve(chains.size());
    for (std::size_t i = 0; i < chains.size(); ++i) {
        const double alpha = row.commands[i].alpha * alpha_gain;
        const double psi1 = row.commands[i].psi1 * beta_gain;
        out.emplace_back(alpha, geartrain::beta_from_servo(alpha, psi1, chains[i]));
    }
    return out;
}

std::string schedule_header(int n_appendages) {
    std::string header = "t";
    for (int i = 1; i <= n_appendages; ++i) {
        header += ",a" + std::to_string(i) + "_alpha,a" + std::to_string(i) + "_psi";
    }
    return header;
}

void write_schedule_csv(std::ostream& out, const ServoSchedule& s) {
    out << schedule_header(s.n_appendages) << '\n';
    std::vector<double> values;
    for (const auto& row : s.rows) {
        values.clear();
        values.push_back(row.t);
        for (const auto& c : row.commands) {
            values.push_back(c.alpha);
            values.push_back(c.psi1);
        }
        csv::write_row(out, values);
    }
}

void export_schedule(const ServoSchedule& s, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string(), "cannot open for writing");
    write_schedule_csv(out, s);
    out.flush();
    if (!out) throw IoError(path.string(), "write failed");
}

ServoSchedule read_schedule_csv(std::istream& in, const std::string& source) {
    const auto table = csv::read_table(in, source);
    const auto& h = table.header;
    if (h.empty() || h.front() != "t" || h.size() % 2 == 0) {
        throw ParseError(source, 1, "expected header t,a1_alpha,a1_psi,...");
    }
    const int n = static_cast<int>((h.size() - 1) / 2);
    if (csv::split_fields(schedule_header(n)) != h) {
        throw ParseError(source, 1, "expected header " + schedule_header(n));
    }
    ServoSchedule s;
    s.n_appendages = n;
    for (const auto& values : table.rows) {
        ScheduleRow row{values[0], {}};
        for (int i = 0; i < n; ++i) {
            row.commands.push_back({values[1 + 2 * i], values[2 + 2 * i]});
        }
        s.rows.push_back(std::move(row));
    }
    if (s.rows.size() >= 2) s.dt = s.rows[1].t - s.rows[0].t;
    return s;
}

ServoSchedule import_schedule(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), "cannot open for reading");
    return read_schedule_csv(in, path.string());
}

}  // namespace krillsim::schedule
