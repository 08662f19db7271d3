#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bpmneval {

enum class Direction { Maximize, Minimize };

struct Orientation {
    Direction x = Direction::Maximize;
    Direction y = Direction::Minimize;
};

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// True iff a is at least as good as b on both axes and strictly better on
/// at least one, per the orientation.
bool dominates(const Point2& a, const Point2& b, const Orientation& orientation);

class EmptyInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Indices of the non-dominated subset, sorted by first-axis coordinate
/// (ties by index). Duplicates of a front point are all retained. Sort +
/// sweep, O(n log n). Throws EmptyInput.
std::vector<std::size_t> pareto_front_2d(const std::vector<Point2>& points,
                                         const Orientation& orientation);

}  // namespace bpmneval
