#pragma once

#include <string>
#include <vector>

namespace krillsim::plot {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    /// Same scale on both axes, used for trajectory loops.
    bool equal_aspect = false;
};

/// Self-contained SVG document. Coordinates are written with fixed precision
/// so identical charts render to identical bytes.
std::string render_svg(const Chart& chart);

}  // namespace krillsim::plot
