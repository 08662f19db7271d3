#include "bpmneval/report.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "bpmneval/svg_plot.hpp"

namespace bpmneval {

namespace {

std::string num(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return buffer;
}

std::ofstream open_output(const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot write " + file.string());
    return out;
}

nlohmann::json stats_json(const RunStats& stats) {
    auto dim = [](const DimStats& d) {
        return nlohmann::json{{"mean", d.mean}, {"std", d.std}, {"min", d.min}, {"max", d.max}};
    };
    return nlohmann::json{{"n", stats.n},
                          {"quality", dim(stats.quality)},
                          {"time_seconds", dim(stats.time_seconds)},
                          {"cost_usd", dim(stats.cost_usd)}};
}

void write_front_svgs(const std::vector<ModelPoint>& points, const BenchFronts& fronts,
                      const std::filesystem::path& out_dir) {
    auto plot = [&](const std::string& stem, const std::string& title, auto x_of, auto y_of,
                    const AxisSpec& x_axis, const AxisSpec& y_axis,
                    const std::vector<std::size_t>& members) {
        std::vector<PlotPoint> plot_points;
        plot_points.reserve(points.size());
        for (const ModelPoint& p : points)
            plot_points.push_back({x_of(p.mean), y_of(p.mean), p.model_name});
        write_scatter_svg(out_dir / (stem + ".svg"), title, x_axis, y_axis, plot_points,
                          members);
    };

    plot(
        "pareto_quality_cost", "Quality vs. cost",
        [](const MetricPoint& m) { return m.quality; },
        [](const MetricPoint& m) { return m.cost_usd; }, {"quality", false},
        {"cost (USD)", true}, fronts.quality_cost);
    plot(
        "pareto_quality_time", "Quality vs. time",
        [](const MetricPoint& m) { return m.quality; },
        [](const MetricPoint& m) { return m.time_seconds; }, {"quality", false},
        {"time (s)", true}, fronts.quality_time);
    plot(
        "pareto_cost_time", "Cost vs. time",
        [](const MetricPoint& m) { return m.cost_usd; },
        [](const MetricPoint& m) { return m.time_seconds; }, {"cost (USD)", true},
        {"time (s)", true}, fronts.cost_time);
}

nlohmann::json fronts_json(const std::vector<ModelPoint>& points, const BenchFronts& fronts) {
    auto names = [&points](const std::vector<std::size_t>& members) {
        nlohmann::json list = nlohmann::json::array();
        for (std::size_t i : members) list.push_back(points[i].model_name);
        return list;
    };
    return nlohmann::json{{"quality_cost", names(fronts.quality_cost)},
                          {"quality_time", names(fronts.quality_time)},
                          {"cost_time", names(fronts.cost_time)}};
}

}  // namespace

std::string csv_quote(const std::string& field) {
    bool needs_quoting = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quoting) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

void emit_report(const BenchResult& result, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string());

    {
        std::ofstream runs = open_output(out_dir / "runs.csv");
        runs << "model_name,case_id,repetition,api_calls,input_tokens,output_tokens,"
                "cost_usd,elapsed_seconds,parse_ok,deficit_count,best_gold,precision,recall,"
                "f1,ged_distance,ged_exact,ged_similarity,behavioral_recall,"
                "behavioral_precision,behavioral_f1,candidate_traces,gold_traces,"
                "traces_truncated,deadlocks,quality,error_note\n";
        for (const RunRecord& r : result.records) {
            runs << csv_quote(r.model_name) << ',' << csv_quote(r.case_id) << ','
                 << r.repetition << ',' << r.usage.api_calls << ',' << r.usage.input_tokens
                 << ',' << r.usage.output_tokens << ',' << num(r.cost_usd) << ','
                 << num(r.elapsed_seconds) << ',' << (r.parse_ok ? "true" : "false") << ','
                 << (r.parse_ok ? std::to_string(r.syntax.deficit_count()) : "") << ',';
            if (r.components) {
                const EvaluationComponents& c = *r.components;
                runs << r.best_gold << ',' << num(c.pr.precision) << ',' << num(c.pr.recall)
                     << ',' << num(c.pr.f1) << ',' << num(c.ged_distance) << ','
                     << (c.ged_exact ? "true" : "false") << ',' << num(c.ged_similarity)
                     << ',' << num(c.behavioral_recall) << ',' << num(c.behavioral_precision)
                     << ',' << num(c.behavioral_f1) << ',' << c.candidate_traces << ','
                     << c.gold_traces << ',' << (c.traces_truncated ? "true" : "false") << ','
                     << c.candidate_deadlocks << ',' << num(c.quality);
            } else {
                runs << ",,,,,,,,,,,,,,";
            }
            runs << ',' << csv_quote(r.error_note) << '\n';
        }
    }

    {
        nlohmann::json summary;
        summary["models"] = nlohmann::json::object();
        for (const auto& [model, stats] : result.model_stats) {
            nlohmann::json entry;
            entry["overall"] = stats_json(stats);
            entry["per_case"] = nlohmann::json::object();
            auto it = result.case_stats.find(model);
            if (it != result.case_stats.end())
                for (const auto& [case_id, case_stats] : it->second)
                    entry["per_case"][case_id] = stats_json(case_stats);
            auto errors = result.model_errors.find(model);
            entry["errors"] = errors == result.model_errors.end() ? 0 : errors->second;
            summary["models"][model] = std::move(entry);
        }
        // Models whose every repetition failed still show up.
        for (const auto& [model, count] : result.model_errors)
            if (!summary["models"].contains(model))
                summary["models"][model] = {{"errors", count}};
        if (!result.case_failures.empty()) summary["aborted"] = result.case_failures;

        std::ofstream out = open_output(out_dir / "summary.json");
        out << summary.dump(2) << '\n';
    }

    {
        std::ofstream points = open_output(out_dir / "points.csv");
        points << "model_name,quality,time_seconds,cost_usd\n";
        for (const ModelPoint& p : result.points)
            points << csv_quote(p.model_name) << ',' << num(p.mean.quality) << ','
                   << num(p.mean.time_seconds) << ',' << num(p.mean.cost_usd) << '\n';
    }

    if (!result.points.empty()) emit_pareto_outputs(result.points, result.fronts, out_dir);
}

void emit_pareto_outputs(const std::vector<ModelPoint>& points, const BenchFronts& fronts,
                         const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string());

    write_front_svgs(points, fronts, out_dir);
    std::ofstream out = open_output(out_dir / "fronts.json");
    out << fronts_json(points, fronts).dump(2) << '\n';
}

}  // namespace bpmneval
