#include "krillsim/scaling.hpp"

#include <cmath>

#include "krillsim/error.hpp"

namespace krillsim::scaling {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive and finite");
}

}  // namespace

void SwimmerParams::validate() const {
    require_positive(stroke_amplitude, "stroke_amplitude");
    require_positive(frequency, "frequency");
    require_positive(pleopod_length, "pleopod_length");
    require_positive(kinematic_viscosity, "kinematic_viscosity");
}

std::string_view to_string(ReConvention conv) noexcept {
    switch (conv) {
        case ReConvention::Dimensional: return "dimensional";
        case ReConvention::AsWritten: return "as-written";
    }
    return "unknown";
}

double tip_speed(const SwimmerParams& p) {
    // theta = 0 is allowed here: a still appendage has zero tip speed.
    if (!(p.stroke_amplitude >= 0.0) || !(p.frequency >= 0.0) || !(p.pleopod_length >= 0.0)) {
        throw DomainError("tip_speed inputs must be non-negative");
    }
    return 2.0 * p.stroke_amplitude * p.frequency * p.pleopod_length;
}

double reynolds(const SwimmerParams& p, ReConvention conv) {
    p.validate();
    const double u_tip = tip_speed(p);
    switch (conv) {
        case ReConvention::Dimensional: return u_tip * p.pleopod_length / p.kinematic_viscosity;
        case ReConvention::AsWritten: return u_tip / p.kinematic_viscosity;
    }
    throw DomainError("unknown Reynolds convention");
}

double scaled_frequency(const SwimmerParams& base, double length_scale, ReConvention conv) {
    base.validate();
    require_positive(length_scale, "length_scale");
    switch (conv) {
        case ReConvention::Dimensional: return base.frequency / (length_scale * length_scale);
        case ReConvention::AsWritten: return base.frequency / length_scale;
    }
    throw DomainError("unknown Reynolds convention");
}

double length_for_reynolds(const SwimmerParams& p, double target_re, ReConvention conv) {
    require_positive(p.stroke_amplitude, "stroke_amplitude");
    require_positive(p.frequency, "frequency");
    require_positive(p.kinematic_viscosity, "kinematic_viscosity");
    require_positive(target_re, "target Reynolds number");
    const double per_length = target_re * p.kinematic_viscosity / (2.0 * p.stroke_amplitude * p.frequency);
    switch (conv) {
        case ReConvention::Dimensional: return std::sqrt(per_length);
        case ReConvention::AsWritten: return per_length;
    }
    throw DomainError("unknown Reynolds convention");
}

SwimmerParams krill_preset() {
    SwimmerParams p{1.553, 5.7, 0.0, kWaterViscosity};  // 89 deg pk-pk, rounded to 1.553 rad
    p.pleopod_length = length_for_reynolds(p, kKrillAppendageRe, ReConvention::Dimensional);
    return p;
}

SwimmerParams scale_swimmer(const SwimmerParams& base, double length_scale, ReConvention conv) {
    SwimmerParams out = base;
    out.frequency = scaled_frequency(base, length_scale, conv);
    out.pleopod_length = base.pleopod_length * length_scale;
    return out;
}

}  // namespace krillsim::scaling
