#include "krillsim/waveforms.hpp"

#include <cmath>

#include "krillsim/error.hpp"
#include "krillsim/units.hpp"

namespace krillsim::waveforms {

namespace {

double wrap_cycle(double x) {
    double w = x - std::floor(x);
    return w >= 1.0 ? 0.0 : w;
}

void check_index(int index, const MetachronalConfig& cfg) {
    if (index < 1 || index > cfg.n_appendages) {
        throw DomainError("appendage index " + std::to_string(index) + " outside 1.." +
                          std::to_string(cfg.n_appendages));
    }
}

}  // namespace

void StrokeProfile::validate() const {
    if (!std::isfinite(mean)) throw DomainError("profile mean must be finite");
    if (!(peak_to_peak >= 0.0) || !std::isfinite(peak_to_peak)) {
        throw DomainError("profile peak_to_peak must be non-negative");
    }
    if (!(frequency > 0.0) || !std::isfinite(frequency)) throw DomainError("profile frequency must be positive");
    if (!(phase_offset >= 0.0 && phase_offset < 1.0)) throw DomainError("profile phase_offset must lie in [0, 1)");
}

void MetachronalConfig::validate() const {
    if (n_appendages < 1) throw DomainError("n_appendages must be at least 1");
    if (!(lag >= 0.0 && lag < 1.0)) throw DomainError("lag must lie in [0, 1) cycles");
    if (!(frequency > 0.0) || !std::isfinite(frequency)) throw DomainError("frequency must be positive");
    const auto n = static_cast<std::size_t>(n_appendages);
    if (alpha_pkpk.size() != n || beta_pkpk.size() != n) {
        throw DomainError("amplitude tables need exactly " + std::to_string(n_appendages) + " entries");
    }
    for (double v : alpha_pkpk) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("alpha amplitudes must be non-negative");
    }
    for (double v : beta_pkpk) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("beta amplitudes must be non-negative");
    }
    if (!std::isfinite(alpha_mean) || !std::isfinite(beta_mean)) throw DomainError("means must be finite");
    if (!std::isfinite(alpha_beta_phase)) throw DomainError("alpha_beta_phase must be finite");
}

std::vector<double> interpolated_table(double first, double last, int n) {
    if (n < 1) throw DomainError("table size must be at least 1");
    if (n == 1) return {first};
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        out.push_back(first + (last - first) * k / (n - 1));
    }
    return out;
}

MetachronalConfig default_config(int n_appendages) {
    MetachronalConfig cfg;
    cfg.n_appendages = n_appendages;
    cfg.alpha_pkpk = interpolated_table(78.0, 106.0, n_appendages);
    cfg.beta_pkpk = interpolated_table(48.0, 71.0, n_appendages);
    return cfg;
}

double appendage_delay(int index, const MetachronalConfig& cfg) {
    check_index(index, cfg);
    return wrap_cycle(static_cast<double>(cfg.n_appendages - index) * cfg.lag);
}

std::vector<double> metachronal_offsets(const MetachronalConfig& cfg) {
    if (!(cfg.lag >= 0.0 && cfg.lag < 1.0)) throw DomainError("lag must lie in [0, 1) cycles");
    std::vector<double> out;
    for (int index = cfg.n_appendages; index >= 1; --index) {
        out.push_back(appendage_delay(index, cfg));
    }
    return out;
}

StrokeProfile alpha_profile(int index, const MetachronalConfig& cfg) {
    cfg.validate();
    check_index(index, cfg);
    // A delay of d cycles is a phase advance of -d.
    return {cfg.alpha_mean, cfg.alpha_pkpk[index - 1], cfg.frequency, wrap_cycle(-appendage_delay(index, cfg))};
}

StrokeProfile beta_profile(int index, const MetachronalConfig& cfg) {
    cfg.validate();
    check_index(index, cfg);
    return {cfg.beta_mean, cfg.beta_pkpk[index - 1], cfg.frequency,
            wrap_cycle(-appendage_delay(index, cfg) - cfg.alpha_beta_phase)};
}

double sample(const StrokeProfile& profile, double t) {
    // Reduce the cycle count first so large t keeps full precision.
    const double cycles = profile.frequency * t + profile.phase_offset;
    const double frac = cycles - std::floor(cycles);
    return profile.mean + 0.5 * profile.peak_to_peak * std::sin(kTwoPi * frac);
}

}  // namespace krillsim::waveforms
