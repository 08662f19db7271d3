#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace bpmneval {

struct PlotPoint {
    double x = 0.0;
    double y = 0.0;
    std::string label;
};

struct AxisSpec {
    std::string label;
    bool log = false;  // falls back to linear when a value is <= 0
};

/// Scatter plot with the Pareto-front members highlighted in red and
/// connected in first-axis order. When a log axis sees a non-positive
/// value it renders linearly and says so in the title.
void write_scatter_svg(const std::filesystem::path& file, const std::string& title,
                       const AxisSpec& x_axis, const AxisSpec& y_axis,
                       const std::vector<PlotPoint>& points,
                       const std::vector<std::size_t>& front_members);

}  // namespace bpmneval
