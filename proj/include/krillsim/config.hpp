#pragma once

#include <iosfwd>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "krillsim/geartrain.hpp"
#include "krillsim/kinematics.hpp"
#include "krillsim/schedule.hpp"
#include "krillsim/waveforms.hpp"

namespace krillsim::config {

/**
 * Settings shared by every subcommand.
 *
 * File syntax is one `key = value` per line, `#` starts a comment, lists are
 * written `[a, b, c]` and booleans `true` / `false`. Recognised keys:
 *
 *   frequency_hz, lag_cycles, n_appendages, alpha_pkpk_deg, beta_pkpk_deg,
 *   alpha_mean_deg, beta_mean_deg, alpha_beta_phase_cycles,
 *   gear_teeth, gear_radii_m, x1_m, x2_m, zeta_deg,
 *   gamma_max_deg, gamma_ramp_cycles, gamma_phase_cycles,
 *   dt_ms, amplification, amplify_alpha, amplify_beta,
 *   servo_min_deg, servo_max_deg
 */
struct SimConfig {
    waveforms::MetachronalConfig gait = waveforms::default_config();
    double x1 = 0.032;
    double x2 = 0.0495;
    double zeta = 37.0;
    std::vector<int> gear_teeth;      // empty: not set
    std::vector<double> gear_radii;   // empty: not set
    kinematics::GammaParams gamma;
    schedule::ScheduleOptions schedule;

    /// Gear chain of appendage `index` (1-based): the configured chain when
    /// one is given, otherwise the robot default for that position.
    geartrain::GearChain chain_for(int index) const;
    std::vector<geartrain::GearChain> chains() const;
    kinematics::AppendageGeometry geometry(int index) const;

    void validate() const;
};

SimConfig parse_config(std::istream& in, const std::string& source);
SimConfig load_config(const std::filesystem::path& path);

}  // namespace krillsim::config
