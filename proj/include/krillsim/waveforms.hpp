#pragma once

#include <string>
#include <vector>

namespace krillsim::waveforms {

/// angle(t) = mean + (peak_to_peak / 2) sin(2 pi (frequency t + phase_offset)), degrees.
struct StrokeProfile {
    double mean = 0.0;           // deg
    double peak_to_peak = 0.0;   // deg
    double frequency = 0.57;     // Hz
    double phase_offset = 0.0;   // cycles, [0, 1)

    void validate() const;
    double period() const noexcept { return 1.0 / frequency; }
};

inline constexpr double kRobotFrequency = 0.57;  // Hz
inline constexpr double kKrillFrequency = 5.7;   // Hz
inline constexpr double kAlphaMean = 58.5;       // deg, midpoint of 14 and 103
inline constexpr double kBetaMean = 133.5;       // deg, midpoint of 105 and 162

/**
 * Gait description for a row of appendages P1 (anterior) .. Pn (posterior).
 *
 * The wave starts at the posterior appendage: Pk is delayed by (n - k) * lag
 * cycles relative to Pn. beta runs `alpha_beta_phase` cycles after alpha; the
 * default of one half puts the beta minimum at the alpha maximum.
 */
struct MetachronalConfig {
    int n_appendages = 5;
    double lag = 0.2;  // cycles; placeholder, not a measured value
    double frequency = kRobotFrequency;
    std::vector<double> alpha_pkpk = {78.0, 85.0, 92.0, 99.0, 106.0};
    std::vector<double> beta_pkpk = {48.0, 53.75, 59.5, 65.25, 71.0};
    double alpha_mean = kAlphaMean;
    double beta_mean = kBetaMean;
    double alpha_beta_phase = 0.5;

    void validate() const;
};

/// Evenly spaced table from `first` (P1) to `last` (Pn).
std::vector<double> interpolated_table(double first, double last, int n);

/// Default gait with amplitude tables interpolated across n appendages.
MetachronalConfig default_config(int n_appendages = 5);

/// Time delay of each appendage in cycles, ordered Pn .. P1 (posterior first).
std::vector<double> metachronal_offsets(const MetachronalConfig& cfg);

/// Delay of appendage `index` (1 = anterior) in cycles.
double appendage_delay(int index, const MetachronalConfig& cfg);

StrokeProfile alpha_profile(int index, const MetachronalConfig& cfg);
StrokeProfile beta_profile(int index, const MetachronalConfig& cfg);

double sample(const StrokeProfile& profile, double t);

}  // namespace krillsim::waveforms
