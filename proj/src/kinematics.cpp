#include "krillsim/kinematics.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include <Eigen/Geometry>

#include "krillsim/csv.hpp"
#include "krillsim/error.hpp"
#include "krillsim/units.hpp"

namespace krillsim::kinematics {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
}

Eigen::Vector2d link_vector(double theta, double length) {
    return Eigen::Rotation2Dd(theta) * Eigen::Vector2d(length, 0.0);
}

// Half-cosine ramp from 0 to 1 over s in [0, 1].
double smooth_ramp(double s) { return 0.5 * (1.0 - std::cos(kPi * s)); }

// Signed distance in cycles from `centre` to `phase`, folded into [-0.5, 0.5).
double cycle_distance(double phase, double centre) {
    double d = phase - centre;
    d -= std::floor(d + 0.5);
    return d;
}

}  // namespace

void AppendageGeometry::validate() const {
    if (!(x1 > 0.0) || !std::isfinite(x1)) throw DomainError("x1 must be positive");
    if (!(x2 > 0.0) || !std::isfinite(x2)) throw DomainError("x2 must be positive");
    if (!(zeta >= 0.0 && zeta < 90.0)) throw DomainError("zeta must lie in [0, 90) deg");
}

void KinematicState::validate() const {
    require_finite(alpha, "alpha");
    require_finite(beta, "beta");
    require_finite(t, "t");
    if (!(gamma >= 0.0 && gamma <= 90.0)) throw DomainError("gamma must lie in [0, 90] deg");
}

void GammaParams::validate() const {
    if (!(max_angle > 0.0 && max_angle <= 90.0)) throw DomainError("gamma max_angle must lie in (0, 90] deg");
    if (!(ramp_width > 0.0 && ramp_width < 0.25)) throw DomainError("gamma ramp_width must lie in (0, 0.25) cycles");
    if (!(abduction_phase >= 0.0 && abduction_phase < 1.0)) throw DomainError("gamma abduction_phase must lie in [0, 1)");
    if (!(power_fraction >= ramp_width && power_fraction <= 1.0 - ramp_width)) {
        throw DomainError("gamma power_fraction must leave room for both ramps");
    }
}

Eigen::Matrix3d RamusFrame::matrix() const {
    Eigen::Matrix3d m;
    m.col(0) = long_axis;
    m.col(1) = normal;
    m.col(2) = binormal;
    return m;
}

LinkAngles link_angles(double alpha_deg, double beta_deg) {
    require_finite(alpha_deg, "alpha");
    require_finite(beta_deg, "beta");
    const double alpha = deg_to_rad(alpha_deg);
    const double beta = deg_to_rad(beta_deg);
    return {kTwoPi - alpha, kPi + beta - alpha};
}

std::pair<double, double> pose_from_link_angles(const LinkAngles& angles) {
    return {rad_to_deg(kTwoPi - angles.theta1), rad_to_deg(angles.theta2 - angles.theta1 + kPi)};
}

Eigen::Vector2d joint_position(const AppendageGeometry& geom, double alpha_deg) {
    geom.validate();
    return link_vector(link_angles(alpha_deg, 180.0).theta1, geom.x1);
}

Eigen::Vector2d pleopod_tip(const AppendageGeometry& geom, double alpha_deg, double beta_deg) {
    geom.validate();
    const auto links = link_angles(alpha_deg, beta_deg);
    return link_vector(links.theta1, geom.x1) + link_vector(links.theta2, geom.x2);
}

TipTrajectory tip_trajectory(const AppendageGeometry& geom,
                             const waveforms::StrokeProfile& alpha_profile,
                             const waveforms::StrokeProfile& beta_profile,
                             std::size_t n_samples) {
    geom.validate();
    alpha_profile.validate();
    beta_profile.validate();
    if (n_samples < 2) throw DomainError("tip_trajectory needs at least 2 samples");
    if (alpha_profile.frequency != beta_profile.frequency) {
        throw DomainError("alpha and beta profiles must share one frequency");
    }
    TipTrajectory traj;
    traj.period = alpha_profile.period();
    traj.samples.reserve(n_samples);
    const double step = traj.period / static_cast<double>(n_samples - 1);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = (i + 1 == n_samples) ? traj.period : step * static_cast<double>(i);
        traj.samples.push_back({t, pleopod_tip(geom, waveforms::sample(alpha_profile, t),
                                               waveforms::sample(beta_profile, t))});
    }
    return traj;
}

double stroke_phase(const waveforms::StrokeProfile& alpha_profile, double t) {
    // sin peaks a quarter cycle into its argument.
    const double cycles = alpha_profile.frequency * t + alpha_profile.phase_offset - 0.25;
    double phase = cycles - std::floor(cycles);
    if (phase >= 1.0) phase = 0.0;
    return phase;
}

double gamma_profile(double phase, const GammaParams& params) {
    if (!(phase >= 0.0 && phase < 1.0)) throw DomainError("phase must lie in [0, 1)");
    params.validate();
    const double half = 0.5 * params.ramp_width;
    const double abduct = cycle_distance(phase, params.abduction_phase);
    const double adduct = cycle_distance(phase, params.abduction_phase + params.power_fraction);
    if (std::abs(abduct) <= half) {
        return params.max_angle * smooth_ramp((abduct + half) / params.ramp_width);
    }
    if (std::abs(adduct) <= half) {
        return params.max_angle * (1.0 - smooth_ramp((adduct + half) / params.ramp_width));
    }
    // Plateaus: power stroke runs from the abduction ramp to the adduction ramp.
    double since_abduction = phase - params.abduction_phase;
    since_abduction -= std::floor(since_abduction);
    return since_abduction < params.power_fraction ? params.max_angle : 0.0;
}

RamiPose pleopod_pose_3d(const AppendageGeometry& geom, const KinematicState& state) {
    geom.validate();
    state.validate();
    const double theta2 = link_angles(state.alpha, state.beta).theta2;

    RamusFrame endo;
    endo.long_axis = Eigen::Vector3d(std::cos(theta2), std::sin(theta2), 0.0);
    endo.binormal = Eigen::Vector3d::UnitZ();
    endo.normal = endo.binormal.cross(endo.long_axis);

    // Intrinsic composition: abduct about the endopodite normal, then cup about the new long axis.
    const Eigen::Matrix3d rot = endo.matrix() *
                                Eigen::AngleAxisd(-deg_to_rad(state.gamma), Eigen::Vector3d::UnitY()).toRotationMatrix() *
                                Eigen::AngleAxisd(deg_to_rad(geom.zeta), Eigen::Vector3d::UnitX()).toRotationMatrix();
    RamusFrame exo{rot.col(0), rot.col(1), rot.col(2)};
    return {endo, exo};
}

void write_trajectory_csv(std::ostream& out, const TipTrajectory& trajectory) {
    out << "t,x,y\n";
    for (const auto& s : trajectory.samples) {
        csv::write_row(out, {s.t, s.position.x(), s.position.y()});
    }
}

}  // namespace krillsim::kinematics
