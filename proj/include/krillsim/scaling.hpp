#pragma once

#include <string_view>

namespace krillsim::scaling {

struct SwimmerParams {
    double stroke_amplitude;     // rad, peak-to-peak
    double frequency;            // Hz
    double pleopod_length;       // m
    double kinematic_viscosity;  // m^2/s

    void validate() const;
};

/// How the appendage Reynolds number is formed from the tip speed 2 theta n L.
///  - Dimensional: Re = U_tip L / nu = 2 theta n L^2 / nu
///  - AsWritten:   Re = 2 theta n L / nu (length enters once)
enum class ReConvention { Dimensional, AsWritten };

std::string_view to_string(ReConvention conv) noexcept;

inline constexpr double kWaterViscosity = 1.0e-6;  // m^2/s
inline constexpr double kKrillAppendageRe = 600.0;
/// Body-scale Reynolds number of swimming krill; display only.
inline constexpr double kKrillBodyRe = 10000.0;

double tip_speed(const SwimmerParams& p);
double reynolds(const SwimmerParams& p, ReConvention conv);

/// Frequency that keeps Re unchanged when every length is multiplied by `length_scale`.
double scaled_frequency(const SwimmerParams& base, double length_scale, ReConvention conv);

/// Pleopod length giving the target Re for the other parameters (length field ignored).
double length_for_reynolds(const SwimmerParams& p, double target_re, ReConvention conv);

/// Live krill: 89 deg mean alpha stroke, 5.7 Hz, water, L chosen so Dimensional Re = 600.
SwimmerParams krill_preset();

/// `base` with lengths multiplied by `length_scale` and the frequency rescaled under `conv`.
SwimmerParams scale_swimmer(const SwimmerParams& base, double length_scale, ReConvention conv);

}  // namespace krillsim::scaling
