#include "krillsim/validation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "krillsim/csv.hpp"
#include "krillsim/kinematics.hpp"
#include "krillsim/units.hpp"

namespace krillsim::validation {

namespace {

double unsigned_angle_deg(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
    const double cross = u.x() * v.y() - u.y() * v.x();
    const double dot = u.dot(v);
    return rad_to_deg(std::atan2(std::abs(cross), dot));
}

double mean_spacing(const AngleTrace& trace) {
    if (trace.size() < 2) return 0.0;
    return (trace.t.back() - trace.t.front()) / static_cast<double>(trace.size() - 1);
}

}  // namespace

FrameError::FrameError(std::size_t frame, const std::string& what)
    : DomainError("frame " + std::to_string(frame) + ": " + what), frame_(frame) {}

void AngleTrace::validate() const {
    if (t.size() != angle.size()) throw DomainError("trace time and angle columns differ in length");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i]) || !std::isfinite(angle[i])) throw DomainError("trace holds non-finite values");
        if (i > 0 && !(t[i] > t[i - 1])) throw DomainError("trace times must be strictly increasing");
    }
}

JointAngles angles_from_markers(const MarkerTrace& markers) {
    JointAngles out;
    out.alpha.t.reserve(markers.size());
    out.alpha.angle.reserve(markers.size());
    out.beta.t.reserve(markers.size());
    out.beta.angle.reserve(markers.size());
    for (std::size_t i = 0; i < markers.size(); ++i) {
        const auto& f = markers[i];
        const Eigen::Vector2d pts[] = {f.body_a, f.body_b, f.joint_a, f.joint_b, f.tip};
        double scale = 0.0;
        for (const auto& p : pts) {
            if (!p.allFinite() || !std::isfinite(f.t)) throw FrameError(i, "non-finite marker");
            scale = std::max(scale, p.cwiseAbs().maxCoeff());
        }
        const double eps = 1e-12 * std::max(scale, 1e-300);
        const Eigen::Vector2d axis = f.body_b - f.body_a;
        const Eigen::Vector2d proto = f.joint_b - f.joint_a;
        const Eigen::Vector2d distal = f.tip - f.joint_b;
        if (axis.norm() <= eps) throw FrameError(i, "body axis points coincide");
        if (proto.norm() <= eps) throw FrameError(i, "joint markers coincide");
        if (distal.norm() <= eps) throw FrameError(i, "distal tip coincides with joint");
        out.alpha.t.push_back(f.t);
        out.alpha.angle.push_back(unsigned_angle_deg(axis, proto));
        out.beta.t.push_back(f.t);
        out.beta.angle.push_back(unsigned_angle_deg(-proto, distal));
    }
    return out;
}

MarkerFrame markers_for_pose(double t, double alpha_deg, double beta_deg, double x1, double x2) {
    kinematics::AppendageGeometry geom;
    geom.x1 = x1;
    geom.x2 = x2;
    MarkerFrame f;
    f.t = t;
    f.joint_a = Eigen::Vector2d::Zero();
    // Body axis along +x, placed behind the joint so it never coincides with it.
    f.body_a = Eigen::Vector2d(-2.0 * x1, 0.0);
    f.body_b = Eigen::Vector2d(-x1, 0.0);
    f.joint_b = kinematics::joint_position(geom, alpha_deg);
    f.tip = kinematics::pleopod_tip(geom, alpha_deg, beta_deg);
    return f;
}

double peak_to_peak(const std::vector<double>& values) {
    if (values.empty()) throw DomainError("peak_to_peak of an empty trace");
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *hi - *lo;
}

double peak_to_peak(const AngleTrace& trace) { return peak_to_peak(trace.angle); }

double interpolate(const AngleTrace& trace, double t) {
    if (trace.empty()) throw DomainError("interpolate on an empty trace");
    if (t < trace.t.front() || t > trace.t.back()) throw DomainError("interpolation time outside trace");
    auto it = std::lower_bound(trace.t.begin(), trace.t.end(), t);
    const auto hi = static_cast<std::size_t>(it - trace.t.begin());
    if (trace.t[hi] == t) return trace.angle[hi];
    const std::size_t lo = hi - 1;
    const double w = (t - trace.t[lo]) / (trace.t[hi] - trace.t[lo]);
    return trace.angle[lo] + w * (trace.angle[hi] - trace.angle[lo]);
}

TraceMetrics compare_traces(const AngleTrace& measured, const AngleTrace& reference) {
    measured.validate();
    reference.validate();
    if (measured.empty() || reference.empty()) throw DomainError("compare_traces needs non-empty traces");

    const double start = std::max(measured.t.front(), reference.t.front());
    const double stop = std::min(measured.t.back(), reference.t.back());
    if (start > stop) throw DomainError("traces do not overlap in time");

    // The grid comes from the trace with the larger sample spacing.
    const bool measured_coarser = mean_spacing(measured) >= mean_spacing(reference);
    const AngleTrace& grid = measured_coarser ? measured : reference;

    TraceMetrics m{0.0, 0.0, 0.0, peak_to_peak(measured), peak_to_peak(reference), 0};
    double sum = 0.0;
    for (double t : grid.t) {
        if (t < start || t > stop) continue;
        const double diff = std::abs(interpolate(measured, t) - interpolate(reference, t));
        sum += diff;
        m.max_abs_diff = std::max(m.max_abs_diff, diff);
        ++m.n_points;
    }
    if (m.n_points == 0) throw DomainError("traces share no grid point in their common window");
    m.mean_abs_diff = sum / static_cast<double>(m.n_points);
    if (m.pkpk_measured > 0.0) {
        m.percent_error = 100.0 * m.mean_abs_diff / m.pkpk_measured;
    } else if (m.mean_abs_diff > 0.0) {
        throw DomainError("percent error undefined: measured trace has zero peak-to-peak amplitude");
    }
    return m;
}

std::vector<std::size_t> local_maxima(const AngleTrace& trace) {
    std::vector<std::size_t> peaks;
    const auto& y = trace.angle;
    std::size_t i = 1;
    while (i + 1 < y.size()) {
        if (y[i] > y[i - 1]) {
            std::size_t j = i;
            while (j + 1 < y.size() && y[j + 1] == y[i]) ++j;
            if (j + 1 < y.size() && y[j + 1] < y[i]) peaks.push_back(i);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return peaks;
}

AngleTrace extract_cycle(const AngleTrace& trace) {
    trace.validate();
    const auto peaks = local_maxima(trace);
    if (peaks.size() < 2) throw DomainError("need two maxima to delimit a cycle");
    AngleTrace out;
    out.t.assign(trace.t.begin() + peaks[0], trace.t.begin() + peaks[1] + 1);
    out.angle.assign(trace.angle.begin() + peaks[0], trace.angle.begin() + peaks[1] + 1);
    return out;
}

namespace {

void require_header(const csv::Table& table, const char* expected, const std::string& source) {
    if (table.header != csv::split_fields(expected)) {
        throw ParseError(source, 1, std::string("expected header ") + expected);
    }
}

AngleTrace to_trace(const csv::Table& table, int column, const std::string& source) {
    AngleTrace trace;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (!trace.t.empty() && !(row[0] > trace.t.back())) {
            throw ParseError(source, table.lines[r], "time must be strictly increasing");
        }
        trace.t.push_back(row[0]);
        trace.angle.push_back(row[static_cast<std::size_t>(column)]);
    }
    return trace;
}

}  // namespace

MarkerTrace read_markers_csv(std::istream& in, const std::string& source) {
    const auto table = csv::read_table(in, source);
    require_header(table, kMarkerHeader, source);
    MarkerTrace out;
    out.reserve(table.rows.size());
    for (const auto& r : table.rows) {
        out.push_back({r[0], {r[1], r[2]}, {r[3], r[4]}, {r[5], r[6]}, {r[7], r[8]}, {r[9], r[10]}});
    }
    return out;
}

AngleTrace read_angle_csv(std::istream& in, const std::string& source) {
    const auto table = csv::read_table(in, source);
    require_header(table, kAngleHeader, source);
    return to_trace(table, 1, source);
}

AngleTrace read_angle_column(std::istream& in, const std::string& source, const std::string& column) {
    const auto table = csv::read_table(in, source);
    if (table.header.empty() || table.header.front() != "t") {
        throw ParseError(source, 1, "first column must be t");
    }
    const int col = table.column(column);
    if (col < 1) throw ParseError(source, 1, "no column named '" + column + "'");
    return to_trace(table, col, source);
}

void write_markers_csv(std::ostream& out, const MarkerTrace& markers) {
    out << kMarkerHeader << '\n';
    for (const auto& f : markers) {
        csv::write_row(out, {f.t, f.body_a.x(), f.body_a.y(), f.body_b.x(), f.body_b.y(), f.joint_a.x(),
                             f.joint_a.y(), f.joint_b.x(), f.joint_b.y(), f.tip.x(), f.tip.y()});
    }
}

void write_angle_csv(std::ostream& out, const AngleTrace& trace) {
    out << kAngleHeader << '\n';
    for (std::size_t i = 0; i < trace.size(); ++i) {
        csv::write_row(out, {trace.t[i], trace.angle[i]});
    }
}

}  // namespace krillsim::validation
