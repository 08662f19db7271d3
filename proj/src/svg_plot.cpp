#include "bpmneval/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bpmneval {

namespace {

constexpr double kWidth = 720, kHeight = 520;
constexpr double kLeft = 80, kRight = 40, kTop = 56, kBottom = 64;

std::string num(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

struct Scale {
    bool log = false;
    double min = 0.0, max = 1.0;  // in transformed space
    double pixel_min = 0.0, pixel_max = 1.0;

    double transform(double v) const { return log ? std::log10(v) : v; }

    double to_pixel(double v) const {
        double t = transform(v);
        double unit = max == min ? 0.5 : (t - min) / (max - min);
        return pixel_min + unit * (pixel_max - pixel_min);
    }
};

Scale make_scale(const std::vector<double>& values, bool want_log, double pixel_min,
                 double pixel_max, bool& log_dropped) {
    Scale scale;
    scale.log = want_log && std::all_of(values.begin(), values.end(),
                                        [](double v) { return v > 0.0; });
    log_dropped = want_log && !scale.log;

    double lo = values.front(), hi = values.front();
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double tlo = scale.log ? std::log10(lo) : lo;
    double thi = scale.log ? std::log10(hi) : hi;
    double pad = (thi - tlo) * 0.08;
    if (pad == 0.0) pad = scale.log ? 0.5 : (tlo == 0.0 ? 1.0 : std::abs(tlo) * 0.1);
    scale.min = tlo - pad;
    scale.max = thi + pad;
    scale.pixel_min = pixel_min;
    scale.pixel_max = pixel_max;
    return scale;
}

// Tick positions in data space.
std::vector<double> ticks_for(const Scale& scale) {
    std::vector<double> ticks;
    if (scale.log) {
        for (int e = static_cast<int>(std::ceil(scale.min));
             e <= static_cast<int>(std::floor(scale.max)); ++e)
            ticks.push_back(std::pow(10.0, e));
        if (ticks.empty()) ticks.push_back(std::pow(10.0, (scale.min + scale.max) / 2.0));
        return ticks;
    }
    double span = scale.max - scale.min;
    double raw_step = span / 5.0;
    double magnitude = std::pow(10.0, std::floor(std::log10(raw_step)));
    double step = magnitude;
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        step = mult * magnitude;
        if (span / step <= 6.0) break;
    }
    double first = std::ceil(scale.min / step) * step;
    for (double t = first; t <= scale.max + step * 1e-9; t += step)
        ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    return ticks;
}

}  // namespace

void write_scatter_svg(const std::filesystem::path& file, const std::string& title,
                       const AxisSpec& x_axis, const AxisSpec& y_axis,
                       const std::vector<PlotPoint>& points,
                       const std::vector<std::size_t>& front_members) {
    if (points.empty()) throw std::invalid_argument("cannot plot an empty point set");

    std::vector<double> xs, ys;
    for (const PlotPoint& p : points) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    bool x_log_dropped = false, y_log_dropped = false;
    Scale sx = make_scale(xs, x_axis.log, kLeft, kWidth - kRight, x_log_dropped);
    // Pixel y grows downward.
    Scale sy = make_scale(ys, y_axis.log, kHeight - kBottom, kTop, y_log_dropped);

    std::string full_title = title;
    if (x_log_dropped)
        full_title += " [" + x_axis.label + " axis linear: non-positive values]";
    if (y_log_dropped)
        full_title += " [" + y_axis.label + " axis linear: non-positive values]";

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "  <title>" << escape(full_title) << "</title>\n";
    svg << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    svg << "  <text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << escape(full_title)
        << "</text>\n";

    // Axes.
    svg << "  <line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
        << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
        << "\" stroke=\"black\"/>\n";
    svg << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
        << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";

    for (double t : ticks_for(sx)) {
        double px = sx.to_pixel(t);
        if (px < kLeft - 0.5 || px > kWidth - kRight + 0.5) continue;
        svg << "  <line x1=\"" << px << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << px
            << "\" y2=\"" << kHeight - kBottom + 5 << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << px << "\" y=\"" << kHeight - kBottom + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(t) << "</text>\n";
    }
    for (double t : ticks_for(sy)) {
        double py = sy.to_pixel(t);
        if (py < kTop - 0.5 || py > kHeight - kBottom + 0.5) continue;
        svg << "  <line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft
            << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
        svg << "  <text x=\"" << kLeft - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(t) << "</text>\n";
    }

    std::string x_title = x_axis.label + (sx.log ? " (log scale)" : "");
    std::string y_title = y_axis.label + (sy.log ? " (log scale)" : "");
    svg << "  <text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape(x_title) << "</text>\n";
    svg << "  <text x=\"20\" y=\"" << (kTop + kHeight - kBottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 20 " << (kTop + kHeight - kBottom) / 2 << ")\">"
        << escape(y_title) << "</text>\n";

    // Front polyline (members in first-axis order) under the markers.
    std::vector<std::size_t> front = front_members;
    std::sort(front.begin(), front.end(), [&points](std::size_t a, std::size_t b) {
        if (points[a].x != points[b].x) return points[a].x < points[b].x;
        return points[a].y < points[b].y;
    });
    if (front.size() > 1) {
        svg << "  <polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i : front)
            svg << num(sx.to_pixel(points[i].x)) << ',' << num(sy.to_pixel(points[i].y)) << ' ';
        svg << "\"/>\n";
    }

    std::vector<bool> on_front(points.size(), false);
    for (std::size_t i : front_members) on_front[i] = true;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double px = sx.to_pixel(points[i].x), py = sy.to_pixel(points[i].y);
        svg << "  <circle cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"4.5\" fill=\""
            << (on_front[i] ? "#c0392b" : "#2e6da4") << "\"/>\n";
        if (!points[i].label.empty())
            svg << "  <text x=\"" << num(px + 7) << "\" y=\"" << num(py - 7)
                << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(points[i].label)
                << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write SVG file: " + file.string());
    out << svg.str();
}

}  // namespace bpmneval
