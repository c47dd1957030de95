#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "krillsim/error.hpp"

namespace krillsim::validation {

/// Angle time series, degrees against seconds.
struct AngleTrace {
    std::vector<double> t;
    std::vector<double> angle;

    std::size_t size() const noexcept { return t.size(); }
    bool empty() const noexcept { return t.empty(); }
    void validate() const;
};

/// Tracked points of one video frame. Units are arbitrary (pixels or meters).
struct MarkerFrame {
    double t;
    Eigen::Vector2d body_a;   // body axis, posterior point
    Eigen::Vector2d body_b;   // body axis, anterior point
    Eigen::Vector2d joint_a;  // protopodite base
    Eigen::Vector2d joint_b;  // protopodite / distal joint
    Eigen::Vector2d tip;      // distal tip
};

using MarkerTrace = std::vector<MarkerFrame>;

struct TraceMetrics {
    double mean_abs_diff;   // deg
    double max_abs_diff;    // deg
    double percent_error;   // mean_abs_diff / pkpk_measured * 100
    double pkpk_measured;   // deg
    double pkpk_reference;  // deg
    std::size_t n_points;   // grid points compared
};

/// A frame with coincident or non-finite markers.
class FrameError : public DomainError {
public:
    FrameError(std::size_t frame, const std::string& what);
    std::size_t frame() const noexcept { return frame_; }

private:
    std::size_t frame_;
};

struct JointAngles {
    AngleTrace alpha;
    AngleTrace beta;
};

/// alpha: unsigned angle between the body axis (body_a -> body_b) and the
/// protopodite (joint_a -> joint_b). beta: interior angle at joint_b between
/// the protopodite and the distal link, 180 deg when straight. Both in [0, 180].
JointAngles angles_from_markers(const MarkerTrace& markers);

/// Markers for a planar pose with the body axis along +x. Used to build
/// synthetic datasets; the inverse of angles_from_markers up to similarity.
MarkerFrame markers_for_pose(double t, double alpha_deg, double beta_deg, double x1, double x2);

double peak_to_peak(const AngleTrace& trace);
double peak_to_peak(const std::vector<double>& values);

/// Linear interpolation of `trace` at time t; t must lie inside the trace.
double interpolate(const AngleTrace& trace, double t);

/**
 * Difference statistics between a measured and a reference trace.
 *
 * Both traces are evaluated on the grid of the coarser one (larger mean
 * sample spacing), restricted to the common time window; the finer trace is
 * linearly interpolated. The percent error is the mean absolute difference
 * relative to the measured peak-to-peak amplitude.
 */
TraceMetrics compare_traces(const AngleTrace& measured, const AngleTrace& reference);

/// Indices of strict local maxima; a flat top counts once, at its first sample.
std::vector<std::size_t> local_maxima(const AngleTrace& trace);

/// Samples between the first two local maxima (inclusive). Throws if the trace
/// holds fewer than two maxima.
AngleTrace extract_cycle(const AngleTrace& trace);

/// CSV readers. Headers must match exactly:
///   markers:   t,bx1,by1,bx2,by2,ax,ay,bx,by,tx,ty
///   reference: t,angle_deg
MarkerTrace read_markers_csv(std::istream& in, const std::string& source);
AngleTrace read_angle_csv(std::istream& in, const std::string& source);
/// Reads column `column` of any numeric CSV whose first column is `t`.
AngleTrace read_angle_column(std::istream& in, const std::string& source, const std::string& column);

void write_markers_csv(std::ostream& out, const MarkerTrace& markers);
void write_angle_csv(std::ostream& out, const AngleTrace& trace);

inline constexpr const char* kMarkerHeader = "t,bx1,by1,bx2,by2,ax,ay,bx,by,tx,ty";
inline constexpr const char* kAngleHeader = "t,angle_deg";

}  // namespace krillsim::validation
