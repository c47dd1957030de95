#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "krillsim/error.hpp"
#include "krillsim/geartrain.hpp"
#include "krillsim/waveforms.hpp"

namespace krillsim::schedule {

inline constexpr double kDefaultDt = 0.010;            // s
inline constexpr double kDefaultAmplification = 2.5;

struct ScheduleOptions {
    double dt = kDefaultDt;
    double amplification = kDefaultAmplification;
    bool amplify_alpha = false;
    bool amplify_beta = true;
    double servo_min = 0.0;    // deg
    double servo_max = 180.0;  // deg

    void validate() const;
};

struct ServoCommand {
    double alpha;  // deg
    double psi1;   // deg
};

struct ScheduleRow {
    double t;
    std::vector<ServoCommand> commands;  // one per appendage, P1 first
};

struct ServoSchedule {
    double dt = kDefaultDt;
    double amplification = kDefaultAmplification;
    bool amplify_alpha = false;
    bool amplify_beta = true;
    int n_appendages = 0;
    std::vector<ScheduleRow> rows;
};

/// A command fell outside the servo travel.
class ServoLimitError : public DomainError {
public:
    ServoLimitError(int appendage, double t, std::string channel, double value);

    int appendage() const noexcept { return appendage_; }
    double time() const noexcept { return t_; }
    const std::string& channel() const noexcept { return channel_; }
    double value() const noexcept { return value_; }

private:
    int appendage_;
    double t_;
    std::string channel_;
    double value_;
};

/// Chains used by the robot: four gears in P1-P3, three in P4-P5, all of
/// the pitch radius that fits the protopodite length x1.
std::vector<geartrain::GearChain> default_chains(int n_appendages, double x1 = 0.032);

/// Number of samples t = i dt with t < duration.
std::size_t sample_count(double duration, double dt);

/**
 * Servo commands sampled on [0, duration) every opt.dt.
 *
 * alpha is commanded directly and the first distal gear through the inverse
 * chain solve; a branch flagged for amplification is divided by
 * opt.amplification since the transmission multiplies servo rotation.
 */
ServoSchedule build_schedule(const waveforms::MetachronalConfig& cfg,
                             const std::vector<geartrain::GearChain>& chains,
                             double duration,
                             const ScheduleOptions& opt = {});

/// Link-side angles (alpha, beta) in degrees recovered from one row.
std::vector<std::pair<double, double>> reconstruct_pose(const ServoSchedule& s,
                                                        const ScheduleRow& row,
                                                        const std::vector<geartrain::GearChain>& chains);

std::string schedule_header(int n_appendages);
void write_schedule_csv(std::ostream& out, const ServoSchedule& s);
void export_schedule(const ServoSchedule& s, const std::filesystem::path& path);

/// Parses a file written by export_schedule. dt is taken from the first two
/// rows when present; amplification flags are not stored and keep defaults.
ServoSchedule import_schedule(const std::filesystem::path& path);
ServoSchedule read_schedule_csv(std::istream& in, const std::string& source);

}  // namespace krillsim::schedule
