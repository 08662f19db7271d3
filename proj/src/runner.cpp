#include "bpmneval/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "bpmneval/pareto.hpp"
#include "bpmneval/xml.hpp"

namespace bpmneval {

namespace {

std::string read_text_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

std::vector<Case> load_dataset(const std::filesystem::path& root) {
    if (!std::filesystem::is_directory(root))
        throw DatasetError(DatasetError::Kind::BadRoot, root.string(),
                           "dataset root is not a directory: " + root.string());

    std::vector<std::filesystem::path> case_dirs;
    for (const auto& entry : std::filesystem::directory_iterator(root))
        if (entry.is_directory()) case_dirs.push_back(entry.path());
    std::sort(case_dirs.begin(), case_dirs.end());

    std::vector<Case> cases;
    for (const std::filesystem::path& dir : case_dirs) {
        Case c;
        c.case_id = dir.filename().string();

        std::filesystem::path description = dir / "description.txt";
        if (!std::filesystem::is_regular_file(description))
            throw DatasetError(DatasetError::Kind::MissingDescription, c.case_id,
                               "case '" + c.case_id + "' has no description.txt");
        c.description_text = read_text_file(description);

        std::vector<std::filesystem::path> gold_files;
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            if (!entry.is_regular_file()) continue;
            std::string name = entry.path().filename().string();
            if (name.rfind("gold", 0) == 0 && entry.path().extension() == ".bpmn")
                gold_files.push_back(entry.path());
        }
        std::sort(gold_files.begin(), gold_files.end());
        if (gold_files.empty())
            throw DatasetError(DatasetError::Kind::NoGoldModel, c.case_id,
                               "case '" + c.case_id + "' has no gold*.bpmn model");

        for (const std::filesystem::path& file : gold_files) {
            try {
                c.gold_models.push_back(parse_bpmn(read_text_file(file)));
                c.gold_files.push_back(file.filename().string());
            } catch (const ParseError& e) {
                throw DatasetError(DatasetError::Kind::GoldParseError, file.string(),
                                   "gold model " + file.string() + " failed to parse: " +
                                       e.what());
            }
        }
        cases.push_back(std::move(c));
    }
    return cases;
}

EvaluationComponents evaluate_candidate(const ProcessGraph& candidate,
                                        const ProcessGraph& gold, const EvalConfig& config) {
    EvaluationComponents out;
    out.matching = compute_node_matching(candidate, gold, config.matching_threshold);
    out.pr = concept_precision_recall(out.matching, candidate, gold);

    EditDistanceResult ged;
    if (static_cast<int>(candidate.nodes.size() + gold.nodes.size()) <= config.ged_node_budget)
        ged = ged_exact(candidate, gold, config.costs, config.ged_node_budget);
    else
        ged = ged_approx(candidate, gold, config.costs, out.matching);
    out.ged_distance = ged.distance;
    out.ged_exact = ged.exact;
    out.ged_similarity = ged_similarity(ged, candidate, gold, config.costs);

    bool behavior_defined = true;
    TraceSet candidate_traces, gold_traces;
    try {
        candidate_traces = enumerate_traces(candidate, config.bounds);
    } catch (const NoStartEvent&) {
        behavior_defined = false;
        out.note = "candidate has no start event; behavioral component is 0";
    }
    if (behavior_defined) {
        try {
            gold_traces = enumerate_traces(gold, config.bounds);
        } catch (const NoStartEvent&) {
            behavior_defined = false;
            out.note = "gold model has no start event; behavioral component is 0";
        }
    }

    if (behavior_defined) {
        auto rewrite = trace_rewrite_map(out.matching, candidate, gold);
        out.behavioral_recall = behavioral_recall(candidate_traces, gold_traces, rewrite);
        out.behavioral_precision = behavioral_precision(candidate_traces, gold_traces, rewrite);
        out.behavioral_f1 = behavioral_f1(out.behavioral_recall, out.behavioral_precision);
        out.candidate_traces = candidate_traces.traces.size();
        out.gold_traces = gold_traces.traces.size();
        out.traces_truncated = candidate_traces.truncated || gold_traces.truncated;
        out.candidate_deadlocks = candidate_traces.deadlocks;
    }

    out.quality = quality_score(out.pr, out.ged_similarity, out.behavioral_f1, config.weights);
    return out;
}

std::optional<std::string> extract_bpmn_xml(std::string_view text) {
    std::size_t pos = 0;
    while ((pos = text.find('<', pos)) != std::string_view::npos) {
        try {
            xml::DocumentSlice slice = xml::parse_document_at(text, pos);
            std::string_view root = xml::local_name(slice.root.name);
            if (root == "definitions" || root == "process")
                return std::string(text.substr(slice.begin, slice.end - slice.begin));
        } catch (const xml::XmlError&) {
            // not a document here; keep scanning
        }
        ++pos;
    }
    return std::nullopt;
}

std::string render_prompt(std::string_view prompt_template, std::string_view description) {
    static constexpr std::string_view kPlaceholder = "{description}";
    std::string out;
    std::size_t at = 0;
    while (true) {
        auto next = prompt_template.find(kPlaceholder, at);
        if (next == std::string_view::npos) {
            out.append(prompt_template.substr(at));
            return out;
        }
        out.append(prompt_template.substr(at, next - at));
        out.append(description);
        at = next + kPlaceholder.size();
    }
}

std::vector<RunRecord> run_case(const Case& benchmark_case, Generator& generator,
                                const GenerationConfig& generation, const EvalConfig& eval,
                                const PricingEntry& pricing,
                                const std::string& prompt_template) {
    std::vector<RunRecord> records;
    std::string prompt = render_prompt(prompt_template, benchmark_case.description_text);

    for (int rep = 0; rep < generation.repetitions; ++rep) {
        RunRecord record;
        record.model_name = generation.model_name;
        record.case_id = benchmark_case.case_id;
        record.repetition = rep;

        std::optional<ProcessGraph> candidate;
        std::string failure;
        auto started = std::chrono::steady_clock::now();
        for (int attempt = 0; attempt <= generation.max_retries; ++attempt) {
            GeneratorRequest request;
            request.model_name = generation.model_name;
            request.prompt = prompt;
            request.temperature = generation.temperature;
            request.seed = generation.seed;
            request.timeout_seconds = generation.timeout_seconds;
            request.case_id = benchmark_case.case_id;
            request.repetition = rep;
            request.attempt = attempt;

            GeneratorResponse response;
            try {
                response = generator.generate(request);
            } catch (const GeneratorError& e) {
                if (e.transport() && rep == 0) throw;  // case aborted
                failure = e.what();
                break;
            }
            record.usage.input_tokens += response.input_tokens;
            record.usage.output_tokens += response.output_tokens;
            record.usage.api_calls += 1;
            record.raw_output = response.text;

            std::optional<std::string> document = extract_bpmn_xml(response.text);
            if (!document) {
                failure = "parse failure: no BPMN XML document in generator output";
                continue;
            }
            try {
                candidate = parse_bpmn(*document);
                failure.clear();
                break;
            } catch (const ParseError& e) {
                failure = std::string("parse failure: ") + e.what();
            }
        }
        auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
        record.elapsed_seconds = std::max(elapsed.count(), 1e-9);
        record.cost_usd = compute_cost(record.usage, pricing);

        if (!candidate) {
            record.error_note = failure.empty() ? "generation failed" : failure;
            records.push_back(std::move(record));
            continue;
        }

        record.parse_ok = true;
        record.syntax = validate_syntax(*candidate);
        for (const ProcessGraph& gold : benchmark_case.gold_models) {
            EvaluationComponents components = evaluate_candidate(*candidate, gold, eval);
            record.gold_quality.push_back(components.quality);
            if (record.best_gold < 0 ||
                components.quality > record.components->quality) {
                record.best_gold = static_cast<int>(record.gold_quality.size()) - 1;
                record.components = std::move(components);
            }
        }
        record.point = MetricPoint{record.components->quality, record.elapsed_seconds,
                                   record.cost_usd};
        records.push_back(std::move(record));
    }
    return records;
}

BenchResult run_bench(const HarnessConfig& config, const std::vector<Case>& cases,
                      Generator& generator) {
    BenchResult result;
    std::vector<PricingEntry> pricing = load_pricing(config.pricing_file);
    for (const std::string& model : config.models)
        pricing_for(pricing, model);  // fail fast on missing entries

    struct Unit {
        std::size_t model_index;
        std::size_t case_index;
    };
    std::vector<Unit> units;
    for (std::size_t mi = 0; mi < config.models.size(); ++mi)
        for (std::size_t ci = 0; ci < cases.size(); ++ci) units.push_back({mi, ci});

    std::vector<std::vector<RunRecord>> slots(units.size());
    std::vector<std::string> failures(units.size());

    auto work = [&](std::size_t unit_index) {
        const Unit& unit = units[unit_index];
        GenerationConfig generation;
        generation.model_name = config.models[unit.model_index];
        generation.seed = config.seed;
        generation.temperature = config.temperature;
        generation.repetitions = config.repetitions;
        generation.max_retries = config.max_retries;
        generation.timeout_seconds = config.timeout_seconds;
        try {
            slots[unit_index] = run_case(cases[unit.case_index], generator, generation,
                                         config.eval,
                                         pricing_for(pricing, generation.model_name),
                                         config.prompt_template);
        } catch (const GeneratorError& e) {
            failures[unit_index] = generation.model_name + "/" +
                                   cases[unit.case_index].case_id + ": " + e.what();
        }
    };

    if (config.parallelism <= 1) {
        for (std::size_t u = 0; u < units.size(); ++u) work(u);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        int degree = std::min<int>(config.parallelism, static_cast<int>(units.size()));
        for (int t = 0; t < degree; ++t)
            workers.emplace_back([&] {
                for (std::size_t u = next.fetch_add(1); u < units.size();
                     u = next.fetch_add(1))
                    work(u);
            });
        for (std::thread& worker : workers) worker.join();
    }

    for (std::size_t u = 0; u < units.size(); ++u) {
        if (!failures[u].empty()) result.case_failures.push_back(failures[u]);
        for (RunRecord& record : slots[u]) result.records.push_back(std::move(record));
    }

    // Aggregate per model and per (model, case); runs without a metric point
    // count as errors.
    std::map<std::string, std::vector<MetricPoint>> by_model;
    std::map<std::string, std::map<std::string, std::vector<MetricPoint>>> by_case;
    for (const RunRecord& record : result.records) {
        if (record.point) {
            by_model[record.model_name].push_back(*record.point);
            by_case[record.model_name][record.case_id].push_back(*record.point);
        } else {
            ++result.model_errors[record.model_name];
        }
    }
    for (const auto& [model, points] : by_model) result.model_stats[model] = aggregate_runs(points);
    for (const auto& [model, cases_map] : by_case)
        for (const auto& [case_id, points] : cases_map)
            result.case_stats[model][case_id] = aggregate_runs(points);

    for (const std::string& model : config.models) {
        auto it = result.model_stats.find(model);
        if (it == result.model_stats.end()) continue;
        result.points.push_back({model,
                                 MetricPoint{it->second.quality.mean,
                                             it->second.time_seconds.mean,
                                             it->second.cost_usd.mean}});
    }

    if (!result.points.empty()) {
        std::vector<Point2> quality_cost, quality_time, cost_time;
        for (const ModelPoint& p : result.points) {
            quality_cost.push_back({p.mean.quality, p.mean.cost_usd});
            quality_time.push_back({p.mean.quality, p.mean.time_seconds});
            cost_time.push_back({p.mean.cost_usd, p.mean.time_seconds});
        }
        Orientation max_min{Direction::Maximize, Direction::Minimize};
        Orientation min_min{Direction::Minimize, Direction::Minimize};
        result.fronts.quality_cost = pareto_front_2d(quality_cost, max_min);
        result.fronts.quality_time = pareto_front_2d(quality_time, max_min);
        result.fronts.cost_time = pareto_front_2d(cost_time, min_min);
    }
    return result;
}

}  // namespace bpmneval
