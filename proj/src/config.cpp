#include "krillsim/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <set>

#include "krillsim/csv.hpp"
#include "krillsim/error.hpp"

namespace krillsim::config {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

struct Entry {
    std::string value;
    std::size_t line;
};

class Reader {
public:
    Reader(std::map<std::string, Entry> entries, std::string source)
        : entries_(std::move(entries)), source_(std::move(source)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::optional<double> number(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        return csv::parse_number(it->second.value, source_, it->second.line);
    }

    std::optional<int> integer(const std::string& key) const {
        auto v = number(key);
        if (!v) return std::nullopt;
        if (*v != std::floor(*v) || std::abs(*v) > 1e9) {
            throw ParseError(source_, entries_.at(key).line, key + " must be an integer");
        }
        return static_cast<int>(*v);
    }

    std::optional<bool> boolean(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        if (it->second.value == "true") return true;
        if (it->second.value == "false") return false;
        throw ParseError(source_, it->second.line, key + " must be true or false");
    }

    std::optional<std::vector<double>> list(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        std::string_view v = it->second.value;
        if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
            throw ParseError(source_, it->second.line, key + " must be a list like [1, 2, 3]");
        }
        v = trim(v.substr(1, v.size() - 2));
        std::vector<double> out;
        if (v.empty()) return out;
        for (const auto& field : csv::split_fields(v)) {
            out.push_back(csv::parse_number(field, source_, it->second.line));
        }
        return out;
    }

    std::size_t line(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }

    const std::string& source() const { return source_; }

private:
    std::map<std::string, Entry> entries_;
    std::string source_;
};

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "frequency_hz",   "lag_cycles",       "n_appendages",     "alpha_pkpk_deg",   "beta_pkpk_deg",
        "alpha_mean_deg", "beta_mean_deg",    "alpha_beta_phase_cycles",
        "gear_teeth",     "gear_radii_m",     "x1_m",             "x2_m",             "zeta_deg",
        "gamma_max_deg",  "gamma_ramp_cycles", "gamma_phase_cycles",
        "dt_ms",          "amplification",    "amplify_alpha",    "amplify_beta",
        "servo_min_deg",  "servo_max_deg",
    };
    return keys;
}

// Runs `fn`, re-tagging domain errors with the line of `key`.
void at_key(const Reader& r, const std::string& key, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const DomainError& e) {
        throw ParseError(r.source(), r.line(key) ? r.line(key) : 1, key + ": " + e.what());
    }
}

}  // namespace

geartrain::GearChain SimConfig::chain_for(int index) const {
    if (!gear_teeth.empty()) return geartrain::GearChain::from_teeth(gear_teeth);
    if (!gear_radii.empty()) return geartrain::GearChain::from_radii(gear_radii);
    return schedule::default_chains(gait.n_appendages, x1).at(static_cast<std::size_t>(index - 1));
}

std::vector<geartrain::GearChain> SimConfig::chains() const {
    std::vector<geartrain::GearChain> out;
    for (int i = 1; i <= gait.n_appendages; ++i) out.push_back(chain_for(i));
    return out;
}

kinematics::AppendageGeometry SimConfig::geometry(int index) const {
    kinematics::AppendageGeometry g;
    g.x1 = x1;
    g.x2 = x2;
    g.zeta = zeta;
    g.gear_chain = chain_for(index);
    g.validate();
    return g;
}

void SimConfig::validate() const {
    gait.validate();
    kinematics::AppendageGeometry g{x1, x2, zeta};
    g.validate();
    gamma.validate();
    schedule.validate();
    if (!gear_teeth.empty() && !gear_radii.empty()) {
        throw DomainError("give either gear_teeth or gear_radii_m, not both");
    }
    chains();
}

SimConfig parse_config(std::istream& in, const std::string& source) {
    std::map<std::string, Entry> entries;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected key = value");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ParseError(source, line_no, "empty key");
        if (value.empty()) throw ParseError(source, line_no, "empty value for " + key);
        if (!known_keys().count(key)) throw ParseError(source, line_no, "unknown key '" + key + "'");
        if (entries.count(key)) throw ParseError(source, line_no, "duplicate key '" + key + "'");
        entries.emplace(key, Entry{value, line_no});
    }
    const Reader r(std::move(entries), source);

    SimConfig cfg;
    const int n = r.integer("n_appendages").value_or(5);
    at_key(r, "n_appendages", [&] { cfg.gait = waveforms::default_config(n); });
    auto& gait = cfg.gait;
    gait.frequency = r.number("frequency_hz").value_or(gait.frequency);
    gait.lag = r.number("lag_cycles").value_or(gait.lag);
    gait.alpha_mean = r.number("alpha_mean_deg").value_or(gait.alpha_mean);
    gait.beta_mean = r.number("beta_mean_deg").value_or(gait.beta_mean);
    gait.alpha_beta_phase = r.number("alpha_beta_phase_cycles").value_or(gait.alpha_beta_phase);
    if (auto v = r.list("alpha_pkpk_deg")) gait.alpha_pkpk = *v;
    if (auto v = r.list("beta_pkpk_deg")) gait.beta_pkpk = *v;

    if (auto v = r.list("gear_teeth")) {
        for (double d : *v) {
            if (d != std::floor(d)) throw ParseError(source, r.line("gear_teeth"), "gear_teeth must be integers");
            cfg.gear_teeth.push_back(static_cast<int>(d));
        }
    }
    if (auto v = r.list("gear_radii_m")) cfg.gear_radii = *v;

    cfg.x1 = r.number("x1_m").value_or(cfg.x1);
    cfg.x2 = r.number("x2_m").value_or(cfg.x2);
    cfg.zeta = r.number("zeta_deg").value_or(cfg.zeta);

    cfg.gamma.max_angle = r.number("gamma_max_deg").value_or(cfg.gamma.max_angle);
    cfg.gamma.ramp_width = r.number("gamma_ramp_cycles").value_or(cfg.gamma.ramp_width);
    cfg.gamma.abduction_phase = r.number("gamma_phase_cycles").value_or(cfg.gamma.abduction_phase);

    if (auto dt_ms = r.number("dt_ms")) cfg.schedule.dt = *dt_ms / 1000.0;
    cfg.schedule.amplification = r.number("amplification").value_or(cfg.schedule.amplification);
    cfg.schedule.amplify_alpha = r.boolean("amplify_alpha").value_or(cfg.schedule.amplify_alpha);
    cfg.schedule.amplify_beta = r.boolean("amplify_beta").value_or(cfg.schedule.amplify_beta);
    cfg.schedule.servo_min = r.number("servo_min_deg").value_or(cfg.schedule.servo_min);
    cfg.schedule.servo_max = r.number("servo_max_deg").value_or(cfg.schedule.servo_max);

    // Report semantic errors against the most specific key we can.
    at_key(r, "frequency_hz", [&] {
        if (!(gait.frequency > 0.0) || !std::isfinite(gait.frequency)) throw DomainError("must be positive");
    });
    at_key(r, "lag_cycles", [&] {
        if (!(gait.lag >= 0.0 && gait.lag < 1.0)) throw DomainError("must lie in [0, 1) cycles");
    });
    at_key(r, r.line("beta_pkpk_deg") ? "beta_pkpk_deg" : "alpha_pkpk_deg", [&] {
        if (gait.beta_pkpk.size() != static_cast<std::size_t>(gait.n_appendages)) gait.validate();
    });
    at_key(r, "alpha_pkpk_deg", [&] { gait.validate(); });
    at_key(r, cfg.gear_teeth.empty() ? "gear_radii_m" : "gear_teeth", [&] { cfg.chains(); });
    at_key(r, "x1_m", [&] { cfg.validate(); });
    return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string(), "cannot open config");
    return parse_config(in, path.string());
}

}  // namespace krillsim::config
