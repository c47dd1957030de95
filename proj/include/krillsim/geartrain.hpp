#pragma once

#include <span>
#include <vector>

namespace krillsim::geartrain {

/// Fewest teeth a printed gear in the transmission may carry.
inline constexpr int kMinTeeth = 12;

/**
 * Serial gear chain mounted on a rotating arm (the protopodite).
 *
 * Gear 1 is driven by the servo, gear K is fixed to the distal link. Radii
 * are stored canonically; teeth counts are accepted since N_k/N_j = r_k/r_j
 * for meshing gears of one modulus. Offsets are the angles at which the
 * displacements are zeroed, all radians.
 */
class GearChain {
public:
    static GearChain from_radii(std::vector<double> radii);
    static GearChain from_teeth(std::span<const int> teeth);
    /// K identical gears of the given primitive radius.
    static GearChain equal(int n_gears, double radius);

    const std::vector<double>& radii() const noexcept { return radii_; }
    int size() const noexcept { return static_cast<int>(radii_.size()); }

    /// r_k / r_{k+1}, zero-based k in [0, K-1).
    double stage_ratio(int k) const;

    double psi1_offset() const noexcept { return psi1_offset_; }
    double theta1_offset() const noexcept { return theta1_offset_; }
    double theta2_offset() const noexcept { return theta2_offset_; }
    GearChain with_offsets(double psi1_0, double theta1_0, double theta2_0) const;

private:
    explicit GearChain(std::vector<double> radii);

    std::vector<double> radii_;
    double psi1_offset_ = 0.0;
    double theta1_offset_ = 0.0;
    double theta2_offset_ = 0.0;
};

struct GearSizing {
    double primitive_radius;  // m
    int teeth;
    double modulus;  // m
};

/// One epicyclic mesh: rotation of the driven gear given the driving gear and
/// the carrying arm. Angles in radians, teeth counts (or radii) positive.
double epicyclic_step(double dphi_prev, double dphi_arm, double n_prev, double n_next);

/// Signed ratio (dtheta2 - dtheta1) / (dpsi1 - dtheta1) = (-1)^(K-1) r_1/r_K.
double composite_ratio(const GearChain& chain) noexcept;

/// Distal-link displacement from servo-gear and arm displacements (radians).
double chain_forward(double dpsi1, double dtheta1, const GearChain& chain);

/// Servo-gear displacement that yields the requested distal displacement.
double chain_inverse(double dtheta2, double dtheta1, const GearChain& chain);

struct ServoAngles {
    double alpha;  // deg, direct drive of link 1
    double psi1;   // deg, absolute angle of the first gear
};

/// Servo commands for a planar pose. Angles in degrees.
ServoAngles servo_angles_for_pose(double alpha_deg, double beta_deg, const GearChain& chain);

/// Inverse of servo_angles_for_pose for the distal link: the beta (deg)
/// produced by the given alpha and first-gear angle.
double beta_from_servo(double alpha_deg, double psi1_deg, const GearChain& chain);

/// Pitch radius so that n_gears gears span the arm length x1 (m).
double primitive_radius(double x1, int n_gears);

/// Gear modulus 2 r_p / N. Teeth counts below kMinTeeth are accepted here;
/// size_gear rejects them.
double modulus(double primitive_radius, int teeth);

/// Checked sizing record; throws DomainError for teeth < kMinTeeth.
GearSizing size_gear(double primitive_radius, int teeth);

/**
 * Backlash (play) operator with a dead band of `deadband` degrees.
 *
 * The output starts on the input and lags a rising input by the full dead
 * band; after a reversal it holds until the input has travelled back across
 * the band. Output is always within [input - deadband, input].
 */
std::vector<double> apply_backlash(std::span<const double> trace, double deadband);

}  // namespace krillsim::geartrain
