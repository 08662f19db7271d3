#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bpmneval/pareto.hpp"
#include "bpmneval/report.hpp"
#include "bpmneval/runner.hpp"

namespace {

using namespace bpmneval;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string read_file_or_throw(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

EvalConfig eval_config_from_file(const std::string& config_file) {
    if (config_file.empty()) return {};
    return eval_config_from(load_key_value_config(config_file));
}

nlohmann::json components_json(const EvaluationComponents& c) {
    nlohmann::json matching = nlohmann::json::array();
    for (const MatchPair& pair : c.matching.pairs)
        matching.push_back({{"candidate", pair.candidate_id},
                            {"gold", pair.gold_id},
                            {"score", pair.score}});
    nlohmann::json out{
        {"matching", {{"pairs", matching}, {"total_score", c.matching.total_score()}}},
        {"precision", c.pr.precision},
        {"recall", c.pr.recall},
        {"f1", c.pr.f1},
        {"ged", {{"distance", c.ged_distance}, {"exact", c.ged_exact},
                 {"similarity", c.ged_similarity}}},
        {"behavior", {{"recall", c.behavioral_recall}, {"precision", c.behavioral_precision},
                      {"f1", c.behavioral_f1}, {"candidate_traces", c.candidate_traces},
                      {"gold_traces", c.gold_traces}, {"truncated", c.traces_truncated},
                      {"candidate_deadlocks", c.candidate_deadlocks}}},
        {"quality", c.quality}};
    if (!c.note.empty()) out["note"] = c.note;
    return out;
}

int run_evaluate(const std::string& candidate_file, const std::string& gold_file,
                 const std::string& config_file) {
    EvalConfig config = eval_config_from_file(config_file);
    ProcessGraph candidate = parse_bpmn(read_file_or_throw(candidate_file));
    ProcessGraph gold = parse_bpmn(read_file_or_throw(gold_file));

    EvaluationComponents components = evaluate_candidate(candidate, gold, config);
    nlohmann::json out = components_json(components);
    out["candidate"] = {{"file", candidate_file},
                        {"nodes", candidate.nodes.size()},
                        {"flows", candidate.flows.size()},
                        {"deficits", validate_syntax(candidate).deficit_count()}};
    out["gold"] = {{"file", gold_file},
                   {"nodes", gold.nodes.size()},
                   {"flows", gold.flows.size()},
                   {"deficits", validate_syntax(gold).deficit_count()}};
    std::cout << out.dump(2) << std::endl;
    return kExitOk;
}

int run_bench_command(const std::string& dataset_dir, const std::string& config_file,
                      const std::string& out_dir) {
    HarnessConfig config = harness_config_from(load_key_value_config(config_file));
    std::vector<Case> cases = load_dataset(dataset_dir);

    std::unique_ptr<Generator> generator;
    if (config.mode == GeneratorMode::Replay)
        generator = std::make_unique<ReplayGenerator>(config.replay_dir);
    else
        generator = std::make_unique<HttpGenerator>(config.endpoint_url);

    BenchResult result = run_bench(config, cases, *generator);
    emit_report(result, out_dir);

    for (const std::string& failure : result.case_failures)
        std::cerr << "aborted: " << failure << '\n';
    std::cout << "evaluated " << result.records.size() << " runs over " << cases.size()
              << " cases; reports in " << out_dir << std::endl;
    return result.case_failures.empty() ? kExitOk : kExitData;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

int run_pareto(const std::string& points_file, const std::string& out_dir) {
    std::ifstream in(points_file);
    if (!in) throw std::runtime_error("cannot read points table: " + points_file);

    std::vector<ModelPoint> points;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("model_name", 0) == 0) continue;
        }
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 4)
            throw std::runtime_error(points_file +
                                     ": expected model_name,quality,time_seconds,cost_usd");
        ModelPoint p;
        p.model_name = fields[0];
        p.mean.quality = std::stod(fields[1]);
        p.mean.time_seconds = std::stod(fields[2]);
        p.mean.cost_usd = std::stod(fields[3]);
        points.push_back(std::move(p));
    }
    if (points.empty()) throw std::runtime_error(points_file + ": no points");

    std::vector<Point2> quality_cost, quality_time, cost_time;
    for (const ModelPoint& p : points) {
        quality_cost.push_back({p.mean.quality, p.mean.cost_usd});
        quality_time.push_back({p.mean.quality, p.mean.time_seconds});
        cost_time.push_back({p.mean.cost_usd, p.mean.time_seconds});
    }
    Orientation max_min{Direction::Maximize, Direction::Minimize};
    Orientation min_min{Direction::Minimize, Direction::Minimize};
    BenchFronts fronts;
    fronts.quality_cost = pareto_front_2d(quality_cost, max_min);
    fronts.quality_time = pareto_front_2d(quality_time, max_min);
    fronts.cost_time = pareto_front_2d(cost_time, min_min);

    emit_pareto_outputs(points, fronts, out_dir);
    std::cout << "front sizes: quality/cost " << fronts.quality_cost.size()
              << ", quality/time " << fronts.quality_time.size() << ", cost/time "
              << fronts.cost_time.size() << "; outputs in " << out_dir << std::endl;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evaluate machine-generated BPMN process models against gold standards"};
    app.require_subcommand(1);

    std::string candidate_file, gold_file, eval_config_file;
    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Score one candidate model against one gold model (JSON to stdout)");
    evaluate->add_option("candidate", candidate_file, "candidate .bpmn file")->required();
    evaluate->add_option("gold", gold_file, "gold-standard .bpmn file")->required();
    evaluate->add_option("--config", eval_config_file, "harness config file");

    std::string dataset_dir, bench_config_file, bench_out = "bench-out";
    CLI::App* bench = app.add_subcommand(
        "bench", "Run the benchmark pipeline over a dataset directory");
    bench->add_option("dataset", dataset_dir, "dataset root directory")->required();
    bench->add_option("--config", bench_config_file, "harness config file")->required();
    bench->add_option("--out", bench_out, "output directory");

    std::string points_file, pareto_out = "pareto-out";
    CLI::App* pareto = app.add_subcommand(
        "pareto", "Compute Pareto fronts and plots from an existing points.csv");
    pareto->add_option("points", points_file, "points.csv table")->required();
    pareto->add_option("--out", pareto_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (evaluate->parsed()) return run_evaluate(candidate_file, gold_file, eval_config_file);
        if (bench->parsed()) return run_bench_command(dataset_dir, bench_config_file, bench_out);
        if (pareto->parsed()) return run_pareto(points_file, pareto_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitData;
    }
    return kExitUsage;
}
