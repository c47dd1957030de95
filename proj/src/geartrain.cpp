#include "krillsim/geartrain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "krillsim/error.hpp"
#include "krillsim/kinematics.hpp"
#include "krillsim/units.hpp"

namespace krillsim::geartrain {

GearChain::GearChain(std::vector<double> radii) : radii_(std::move(radii)) {
    if (radii_.size() < 2) {
        throw DomainError("gear chain needs at least 2 gears, got " + std::to_string(radii_.size()));
    }
    for (double r : radii_) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw DomainError("gear radius must be positive and finite");
        }
    }
}

GearChain GearChain::from_radii(std::vector<double> radii) { return GearChain(std::move(radii)); }

GearChain GearChain::from_teeth(std::span<const int> teeth) {
    std::vector<double> radii;
    radii.reserve(teeth.size());
    for (int n : teeth) {
        if (n <= 0) throw DomainError("teeth count must be positive, got " + std::to_string(n));
        radii.push_back(static_cast<double>(n));
    }
    return GearChain(std::move(radii));
}

GearChain GearChain::equal(int n_gears, double radius) {
    if (n_gears < 2) throw DomainError("gear chain needs at least 2 gears");
    return GearChain(std::vector<double>(static_cast<std::size_t>(n_gears), radius));
}

double GearChain::stage_ratio(int k) const {
    if (k < 0 || k + 1 >= size()) throw DomainError("stage index out of range");
    return radii_[k] / radii_[k + 1];
}

GearChain GearChain::with_offsets(double psi1_0, double theta1_0, double theta2_0) const {
    GearChain copy = *this;
    copy.psi1_offset_ = psi1_0;
    copy.theta1_offset_ = theta1_0;
    copy.theta2_offset_ = theta2_0;
    return copy;
}

double epicyclic_step(double dphi_prev, double dphi_arm, double n_prev, double n_next) {
    if (!(n_prev > 0.0) || !(n_next > 0.0)) {
        throw DomainError("teeth counts must be positive");
    }
    return dphi_arm - (n_prev / n_next) * (dphi_prev - dphi_arm);
}

double composite_ratio(const GearChain& chain) noexcept {
    const auto& r = chain.radii();
    const double sign = (r.size() % 2 == 0) ? -1.0 : 1.0;  // (-1)^(K-1)
    return sign * r.front() / r.back();
}

double chain_forward(double dpsi1, double dtheta1, const GearChain& chain) {
    // Each mesh reverses the motion relative to the arm: (psi_{k+1} - theta1) = -r_k/r_{k+1} (psi_k - theta1).
    double relative = dpsi1 - dtheta1;
    for (int k = 0; k + 1 < chain.size(); ++k) {
        relative *= -chain.stage_ratio(k);
    }
    return dtheta1 + relative;
}

double chain_inverse(double dtheta2, double dtheta1, const GearChain& chain) {
    return dtheta1 + (dtheta2 - dtheta1) / composite_ratio(chain);
}

ServoAngles servo_angles_for_pose(double alpha_deg, double beta_deg, const GearChain& chain) {
    const auto links = kinematics::link_angles(alpha_deg, beta_deg);
    const double dtheta1 = links.theta1 - chain.theta1_offset();
    const double dtheta2 = links.theta2 - chain.theta2_offset();
    const double psi1 = chain_inverse(dtheta2, dtheta1, chain) + chain.psi1_offset();
    return {alpha_deg, rad_to_deg(psi1)};
}

double beta_from_servo(double alpha_deg, double psi1_deg, const GearChain& chain) {
    const double theta1 = kinematics::link_angles(alpha_deg, 180.0).theta1;
    const double dtheta1 = theta1 - chain.theta1_offset();
    const double dpsi1 = deg_to_rad(psi1_deg) - chain.psi1_offset();
    const double theta2 = chain_forward(dpsi1, dtheta1, chain) + chain.theta2_offset();
    return kinematics::pose_from_link_angles({theta1, theta2}).second;
}

double primitive_radius(double x1, int n_gears) {
    if (!(x1 > 0.0) || !std::isfinite(x1)) throw DomainError("link length must be positive");
    if (n_gears < 2) throw DomainError("need at least 2 gears, got " + std::to_string(n_gears));
    return x1 / (2.0 * n_gears - 2.0);
}

double modulus(double primitive_radius, int teeth) {
    if (teeth <= 0) throw DomainError("teeth count must be positive, got " + std::to_string(teeth));
    if (!(primitive_radius > 0.0)) throw DomainError("primitive radius must be positive");
    return 2.0 * primitive_radius / teeth;
}

GearSizing size_gear(double primitive_radius, int teeth) {
    if (teeth < kMinTeeth) {
        throw DomainError("gear needs at least " + std::to_string(kMinTeeth) + " teeth, got " +
                          std::to_string(teeth));
    }
    return {primitive_radius, teeth, modulus(primitive_radius, teeth)};
}

std::vector<double> apply_backlash(std::span<const double> trace, double deadband) {
    if (!(deadband >= 0.0)) throw DomainError("deadband must be non-negative");
    std::vector<double> out;
    out.reserve(trace.size());
    for (double x : trace) {
        if (out.empty()) {
            out.push_back(x);
            continue;
        }
        out.push_back(std::clamp(out.back(), x - deadband, x));
    }
    return out;
}

}  // namespace krillsim::geartrain
