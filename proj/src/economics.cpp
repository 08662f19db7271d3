#include "bpmneval/economics.hpp"

#include <algorithm>
#include <cmath>

namespace bpmneval {

double compute_cost(const TokenUsage& usage, const PricingEntry& pricing) {
    return usage.input_tokens / 1e6 * pricing.usd_per_million_input +
           usage.output_tokens / 1e6 * pricing.usd_per_million_output +
           usage.api_calls * pricing.usd_per_call;
}

namespace {

DimStats dim_stats(const std::vector<double>& values) {
    DimStats stats;
    stats.min = *std::min_element(values.begin(), values.end());
    stats.max = *std::max_element(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    stats.mean = sum / values.size();
    if (values.size() > 1) {
        double squares = 0.0;
        for (double v : values) squares += (v - stats.mean) * (v - stats.mean);
        stats.std = std::sqrt(squares / (values.size() - 1));
    }
    return stats;
}

}  // namespace

RunStats aggregate_runs(const std::vector<MetricPoint>& points) {
    if (points.empty()) throw EmptySample("cannot aggregate an empty sample");

    std::vector<double> quality, time_seconds, cost_usd;
    quality.reserve(points.size());
    time_seconds.reserve(points.size());
    cost_usd.reserve(points.size());
    for (const MetricPoint& p : points) {
        quality.push_back(p.quality);
        time_seconds.push_back(p.time_seconds);
        cost_usd.push_back(p.cost_usd);
    }

    RunStats stats;
    stats.quality = dim_stats(quality);
    stats.time_seconds = dim_stats(time_seconds);
    stats.cost_usd = dim_stats(cost_usd);
    stats.n = points.size();
    return stats;
}

}  // namespace bpmneval
