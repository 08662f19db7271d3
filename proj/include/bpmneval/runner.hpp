#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bpmneval/behavior.hpp"
#include "bpmneval/bpmn.hpp"
#include "bpmneval/config.hpp"
#include "bpmneval/economics.hpp"
#include "bpmneval/generator.hpp"
#include "bpmneval/matching.hpp"
#include "bpmneval/quality.hpp"

namespace bpmneval {

/// One benchmark case: a plain-text description plus one or more gold models.
struct Case {
    std::string case_id;
    std::string description_text;
    std::vector<ProcessGraph> gold_models;
    std::vector<std::string> gold_files;  // file names, parallel to gold_models
};

class DatasetError : public std::runtime_error {
public:
    enum class Kind { MissingDescription, NoGoldModel, GoldParseError, BadRoot };

    DatasetError(Kind kind, std::string subject, const std::string& message)
        : std::runtime_error(message), kind_(kind), subject_(std::move(subject)) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& subject() const noexcept { return subject_; }

private:
    Kind kind_;
    std::string subject_;
};

/// Loads `<root>/<case_id>/description.txt` + `<root>/<case_id>/gold*.bpmn`,
/// cases sorted by directory name. Gold parse errors are fatal.
std::vector<Case> load_dataset(const std::filesystem::path& root);

struct GenerationConfig {
    std::string model_name;
    std::optional<long> seed;
    double temperature = 0.0;
    int repetitions = 1;
    int max_retries = 1;
    double timeout_seconds = 60.0;
};

/// All intermediate metric components for one candidate/gold pair.
struct EvaluationComponents {
    NodeMatching matching;
    PrecisionRecall pr;
    double ged_distance = 0.0;
    bool ged_exact = false;
    double ged_similarity = 0.0;
    double behavioral_recall = 0.0;
    double behavioral_precision = 0.0;
    double behavioral_f1 = 0.0;
    std::size_t candidate_traces = 0;
    std::size_t gold_traces = 0;
    bool traces_truncated = false;
    int candidate_deadlocks = 0;
    double quality = 0.0;
    std::string note;  // diagnostics, e.g. "candidate has no start event"
};

/// Deterministic metric pipeline: matching -> concept precision/recall ->
/// GED (exact within the node budget, else matching-induced approximation)
/// -> trace enumeration -> behavioral measures -> scalar quality. A missing
/// start event zeroes the behavioral component instead of failing.
EvaluationComponents evaluate_candidate(const ProcessGraph& candidate,
                                        const ProcessGraph& gold, const EvalConfig& config);

struct RunRecord {
    std::string model_name;
    std::string case_id;
    int repetition = 0;
    std::string raw_output;
    bool parse_ok = false;
    std::string error_note;  // set iff no metric point
    SyntaxReport syntax;
    std::vector<double> gold_quality;  // quality_score against each gold model
    int best_gold = -1;
    std::optional<EvaluationComponents> components;  // against the best gold
    std::optional<MetricPoint> point;
    TokenUsage usage;
    double cost_usd = 0.0;  // paid regardless of parse outcome
    double elapsed_seconds = 0.0;
};

/// Runs all repetitions of one case against one generator. Per-repetition
/// failures land in the record's error note; a transport failure during the
/// first repetition propagates as GeneratorError (the case is aborted).
std::vector<RunRecord> run_case(const Case& benchmark_case, Generator& generator,
                                const GenerationConfig& generation, const EvalConfig& eval,
                                const PricingEntry& pricing,
                                const std::string& prompt_template);

/// First well-formed XML document in `text` whose root element is
/// `definitions` or `process` (markdown fences and prose are skipped).
std::optional<std::string> extract_bpmn_xml(std::string_view text);

/// Replaces every {description} placeholder.
std::string render_prompt(std::string_view prompt_template, std::string_view description);

struct ModelPoint {
    std::string model_name;
    MetricPoint mean;
};

struct BenchFronts {
    std::vector<std::size_t> quality_cost;  // indices into BenchResult::points
    std::vector<std::size_t> quality_time;
    std::vector<std::size_t> cost_time;
};

struct BenchResult {
    std::vector<RunRecord> records;  // ordered by (model, case, repetition)
    std::map<std::string, RunStats> model_stats;
    std::map<std::string, std::map<std::string, RunStats>> case_stats;  // model -> case
    std::map<std::string, std::size_t> model_errors;  // failed repetitions per model
    std::vector<ModelPoint> points;  // per-model means, config order
    BenchFronts fronts;
    std::vector<std::string> case_failures;  // aborted model/case combinations
};

/// Full pipeline over a dataset: every configured model against every case,
/// aggregation, per-model mean points, and the three 2-D Pareto fronts.
BenchResult run_bench(const HarnessConfig& config, const std::vector<Case>& cases,
                      Generator& generator);

}  // namespace bpmneval
