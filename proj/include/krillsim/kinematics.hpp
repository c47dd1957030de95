#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "krillsim/geartrain.hpp"
#include "krillsim/waveforms.hpp"

namespace krillsim::kinematics {

/// One pleopod: protopodite (link 1), endopodite (link 2) and the fixed cupping
/// angle between the two rami midplanes.
struct AppendageGeometry {
    double x1 = 0.032;   // m
    double x2 = 0.0495;  // m
    double zeta = 37.0;  // deg
    geartrain::GearChain gear_chain = geartrain::GearChain::equal(4, 0.032 / 6.0);

    /// Throws DomainError unless x1 > 0, x2 > 0 and 0 <= zeta < 90.
    void validate() const;
};

/// Pose of one appendage. Angles in degrees, time in seconds.
struct KinematicState {
    double alpha = 0.0;
    double beta = 180.0;
    double gamma = 0.0;
    double t = 0.0;

    void validate() const;
};

/// Global link angles in radians, unwrapped (theta1 = 2pi at alpha = 0).
struct LinkAngles {
    double theta1;
    double theta2;
};

struct TipSample {
    double t;
    Eigen::Vector2d position;
};

struct TipTrajectory {
    std::vector<TipSample> samples;
    double period = 0.0;  // s
};

/// Ramp-and-plateau law for the passively driven abduction angle.
struct GammaParams {
    double max_angle = 77.0;     // deg
    double ramp_width = 0.1;     // cycles, in (0, 0.25)
    double abduction_phase = 0.0;  // cycles after the alpha maximum
    double power_fraction = 0.5;   // share of the cycle spent in the power stroke

    void validate() const;
};

/// Orthonormal frame of a ramus. `long_axis` runs from the joint to the tip,
/// `normal` is the paddle midplane normal, `binormal` completes a right-handed set.
struct RamusFrame {
    Eigen::Vector3d long_axis;
    Eigen::Vector3d normal;
    Eigen::Vector3d binormal;

    Eigen::Matrix3d matrix() const;
};

struct RamiPose {
    RamusFrame endopodite;
    RamusFrame exopodite;
};

LinkAngles link_angles(double alpha_deg, double beta_deg);

/// Inverse of link_angles: (alpha, beta) in degrees.
std::pair<double, double> pose_from_link_angles(const LinkAngles& angles);

/// Tip of the distal link relative to joint A, meters.
Eigen::Vector2d pleopod_tip(const AppendageGeometry& geom, double alpha_deg, double beta_deg);

/// Position of joint B (end of the protopodite) relative to joint A, meters.
Eigen::Vector2d joint_position(const AppendageGeometry& geom, double alpha_deg);

/// n_samples uniform samples over exactly one stroke period, endpoints included.
TipTrajectory tip_trajectory(const AppendageGeometry& geom,
                             const waveforms::StrokeProfile& alpha_profile,
                             const waveforms::StrokeProfile& beta_profile,
                             std::size_t n_samples);

/// Cycle fraction in [0, 1) elapsed since the last alpha maximum.
double stroke_phase(const waveforms::StrokeProfile& alpha_profile, double t);

/// Abduction angle (deg) at a stroke phase measured from the alpha maximum.
double gamma_profile(double phase, const GammaParams& params = {});

/// Endopodite long axis in the stroke plane at theta2 with its binormal along
/// joint axis B (+z). The exopodite is the endopodite frame abducted by gamma
/// about the endopodite normal (axis C, perpendicular to B), then cupped by
/// zeta about its own long axis.
RamiPose pleopod_pose_3d(const AppendageGeometry& geom, const KinematicState& state);

/// CSV `t,x,y` with shortest round-trip decimal formatting.
void write_trajectory_csv(std::ostream& out, const TipTrajectory& trajectory);

}  // namespace krillsim::kinematics
