#include "krillsim/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace krillsim::plot {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;  // room for the legend
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr int kTicks = 5;

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string fixed(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    std::string s(buf);
    if (s == "-0.00" || s == "-0") s.erase(0, 1);
    return s;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool empty() const { return lo > hi; }
    void pad() {
        if (empty()) {
            lo = 0.0;
            hi = 1.0;
        } else if (hi == lo) {
            const double w = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
            lo -= w;
            hi += w;
        }
    }
};

}  // namespace

std::string render_svg(const Chart& chart) {
    Range xr, yr;
    for (const auto& s : chart.series) {
        for (double v : s.x) xr.add(v);
        for (double v : s.y) yr.add(v);
    }
    xr.pad();
    yr.pad();

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    double sx = plot_w / (xr.hi - xr.lo);
    double sy = plot_h / (yr.hi - yr.lo);
    double ox = 0.0, oy = 0.0;
    if (chart.equal_aspect) {
        const double s = std::min(sx, sy);
        ox = 0.5 * (plot_w - s * (xr.hi - xr.lo));
        oy = 0.5 * (plot_h - s * (yr.hi - yr.lo));
        sx = sy = s;
    }
    auto px = [&](double x) { return kLeft + ox + (x - xr.lo) * sx; };
    auto py = [&](double y) { return kTop + plot_h - oy - (y - yr.lo) * sy; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kWidth, 0) << "\" height=\""
       << fixed(kHeight, 0) << "\" viewBox=\"0 0 " << fixed(kWidth, 0) << ' ' << fixed(kHeight, 0) << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << fixed(kWidth, 0) << "\" height=\"" << fixed(kHeight, 0)
       << "\" fill=\"white\"/>\n";
    if (!chart.title.empty()) {
        os << "<text class=\"title\" x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" "
           << "font-family=\"sans-serif\" font-size=\"16\">" << escape(chart.title) << "</text>\n";
    }

    // Axes frame and ticks.
    os << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    os << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\"" << fixed(plot_w)
       << "\" height=\"" << fixed(plot_h) << "\"/>\n";
    os << "</g>\n<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (int i = 0; i <= kTicks; ++i) {
        const double tx = kLeft + plot_w * i / kTicks;
        const double ty = kTop + plot_h - plot_h * i / kTicks;
        const double fx = xr.lo + (tx - kLeft - ox) / sx;
        const double fy = yr.lo + (kTop + plot_h - oy - ty) / sy;
        os << "<line x1=\"" << fixed(tx) << "\" y1=\"" << fixed(kTop + plot_h) << "\" x2=\"" << fixed(tx)
           << "\" y2=\"" << fixed(kTop + plot_h + 5) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fixed(tx) << "\" y=\"" << fixed(kTop + plot_h + 18)
           << "\" text-anchor=\"middle\">" << fixed(fx, 3) << "</text>\n";
        os << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << fixed(ty) << "\" x2=\"" << fixed(kLeft)
           << "\" y2=\"" << fixed(ty) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(ty + 4) << "\" text-anchor=\"end\">"
           << fixed(fy, 3) << "</text>\n";
    }
    os << "</g>\n";
    os << "<text class=\"xlabel\" x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"" << fixed(kHeight - 15)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(chart.x_label)
       << "</text>\n";
    os << "<text class=\"ylabel\" x=\"18\" y=\"" << fixed(kTop + plot_h / 2) << "\" text-anchor=\"middle\" "
       << "transform=\"rotate(-90 18 " << fixed(kTop + plot_h / 2) << ")\" font-family=\"sans-serif\" "
       << "font-size=\"13\">" << escape(chart.y_label) << "</text>\n";

    for (std::size_t i = 0; i < chart.series.size(); ++i) {
        const auto& s = chart.series[i];
        const char* color = kPalette[i % kPalette.size()];
        os << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        const std::size_t n = std::min(s.x.size(), s.y.size());
        for (std::size_t k = 0; k < n; ++k) {
            if (k) os << ' ';
            os << fixed(px(s.x[k])) << ',' << fixed(py(s.y[k]));
        }
        os << "\"/>\n";
    }

    os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t i = 0; i < chart.series.size(); ++i) {
        const double y = kTop + 10 + 20.0 * static_cast<double>(i);
        const double x = kWidth - kRight + 15;
        os << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(x + 20) << "\" y2=\""
           << fixed(y) << "\" stroke=\"" << kPalette[i % kPalette.size()] << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << fixed(x + 26) << "\" y=\"" << fixed(y + 4) << "\">" << escape(chart.series[i].label)
           << "</text>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace krillsim::plot
