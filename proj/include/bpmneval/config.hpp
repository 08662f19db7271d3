#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpmneval/behavior.hpp"
#include "bpmneval/economics.hpp"
#include "bpmneval/quality.hpp"

namespace bpmneval {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` file; '#' starts a comment, blank lines ignored.
/// Relative paths resolve against the config file's directory.
struct KeyValueConfig {
    std::map<std::string, std::string> values;
    std::filesystem::path base_dir;

    bool has(const std::string& key) const { return values.count(key) > 0; }
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::filesystem::path get_path(const std::string& key) const;  // resolved; empty if absent
};

KeyValueConfig load_key_value_config(const std::filesystem::path& file);

/// Everything the metric pipeline needs.
struct EvalConfig {
    double matching_threshold = 0.5;
    EditCostModel costs;
    QualityWeights weights;
    int ged_node_budget = 12;
    TraceBounds bounds;
};

enum class GeneratorMode { Replay, Http };

/// Full harness configuration for `bench`.
struct HarnessConfig {
    EvalConfig eval;
    std::vector<std::string> models;
    double temperature = 0.0;
    std::optional<long> seed;
    int repetitions = 1;
    int max_retries = 1;
    double timeout_seconds = 60.0;
    int parallelism = 1;

    GeneratorMode mode = GeneratorMode::Replay;
    std::string endpoint_url;            // http mode
    std::filesystem::path replay_dir;    // replay mode
    std::filesystem::path pricing_file;
    std::string prompt_template;         // with a {description} placeholder
};

EvalConfig eval_config_from(const KeyValueConfig& config);
HarnessConfig harness_config_from(const KeyValueConfig& config);

/// CSV pricing table: model_name,usd_per_million_input,usd_per_million_output,usd_per_call
std::vector<PricingEntry> load_pricing(const std::filesystem::path& file);

const PricingEntry& pricing_for(const std::vector<PricingEntry>& table,
                                const std::string& model_name);

extern const char kDefaultPromptTemplate[];

}  // namespace bpmneval
