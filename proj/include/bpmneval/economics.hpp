#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpmneval {

struct TokenUsage {
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
    int api_calls = 0;
};

struct PricingEntry {
    std::string model_name;
    double usd_per_million_input = 0.0;
    double usd_per_million_output = 0.0;
    double usd_per_call = 0.0;
};

/// One evaluated generation run projected onto the three axes.
struct MetricPoint {
    double quality = 0.0;       // in [0,1]
    double time_seconds = 0.0;  // > 0
    double cost_usd = 0.0;      // >= 0
};

struct DimStats {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation (n-1), 0 when n == 1
    double min = 0.0;
    double max = 0.0;
};

struct RunStats {
    DimStats quality;
    DimStats time_seconds;
    DimStats cost_usd;
    std::size_t n = 0;
};

class EmptySample : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

double compute_cost(const TokenUsage& usage, const PricingEntry& pricing);

/// Throws EmptySample on an empty list.
RunStats aggregate_runs(const std::vector<MetricPoint>& points);

}  // namespace bpmneval
