#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "bpmneval/runner.hpp"

namespace bpmneval {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// RFC-4180 field quoting (quotes only when needed).
std::string csv_quote(const std::string& field);

/// Writes runs.csv, summary.json, points.csv, fronts.json and the three
/// Pareto scatter plots (pareto_quality_cost.svg, pareto_quality_time.svg,
/// pareto_cost_time.svg) into out_dir, creating it if needed.
void emit_report(const BenchResult& result, const std::filesystem::path& out_dir);

/// Front plots + fronts.json for an already-computed point table (the
/// `pareto` subcommand).
void emit_pareto_outputs(const std::vector<ModelPoint>& points, const BenchFronts& fronts,
                         const std::filesystem::path& out_dir);

}  // namespace bpmneval
