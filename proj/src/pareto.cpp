#include "bpmneval/pareto.hpp"

#include <algorithm>
#include <limits>

namespace bpmneval {

namespace {

// Larger signed value = better, regardless of axis direction.
double goodness(double value, Direction direction) {
    return direction == Direction::Maximize ? value : -value;
}

}  // namespace

bool dominates(const Point2& a, const Point2& b, const Orientation& orientation) {
    double ax = goodness(a.x, orientation.x), bx = goodness(b.x, orientation.x);
    double ay = goodness(a.y, orientation.y), by = goodness(b.y, orientation.y);
    if (ax < bx || ay < by) return false;
    return ax > bx || ay > by;
}

std::vector<std::size_t> pareto_front_2d(const std::vector<Point2>& points,
                                         const Orientation& orientation) {
    if (points.empty()) throw EmptyInput("pareto_front_2d requires at least one point");

    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double ga = goodness(points[a].x, orientation.x);
        double gb = goodness(points[b].x, orientation.x);
        if (ga != gb) return ga > gb;
        return a < b;
    });

    std::vector<std::size_t> members;
    double best_y_strict = -std::numeric_limits<double>::infinity();
    std::size_t at = 0;
    while (at < order.size()) {
        // One group of equal first-axis values at a time: within a group only
        // the best second axis survives; against strictly-better-x points a
        // tie on y already loses.
        std::size_t group_end = at;
        double x_good = goodness(points[order[at]].x, orientation.x);
        double group_best = -std::numeric_limits<double>::infinity();
        while (group_end < order.size() &&
               goodness(points[order[group_end]].x, orientation.x) == x_good) {
            group_best = std::max(group_best,
                                  goodness(points[order[group_end]].y, orientation.y));
            ++group_end;
        }
        for (std::size_t k = at; k < group_end; ++k) {
            double y_good = goodness(points[order[k]].y, orientation.y);
            if (y_good == group_best && y_good > best_y_strict)
                members.push_back(order[k]);
        }
        best_y_strict = std::max(best_y_strict, group_best);
        at = group_end;
    }

    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].x != points[b].x) return points[a].x < points[b].x;
        return a < b;
    });
    return members;
}

}  // namespace bpmneval
