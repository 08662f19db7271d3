#include "bpmneval/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace bpmneval {

const char kDefaultPromptTemplate[] =
    "Translate the following process description into a BPMN 2.0 process model. "
    "Use only start events, end events, tasks, exclusive gateways, parallel gateways "
    "and sequence flows. Respond with a single BPMN 2.0 XML document and nothing "
    "else.\n\n{description}\n";

namespace {

std::string trim(std::string_view s) {
    std::size_t begin = 0, end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

std::string read_file(const std::filesystem::path& file, const char* what) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigError(std::string("cannot read ") + what + ": " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        std::size_t used = 0;
        double value = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not a number: '" + it->second + "'");
    }
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        std::size_t used = 0;
        int value = std::stoi(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not an integer: '" + it->second + "'");
    }
}

std::filesystem::path KeyValueConfig::get_path(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end() || it->second.empty()) return {};
    std::filesystem::path p(it->second);
    return p.is_absolute() ? p : base_dir / p;
}

KeyValueConfig load_key_value_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read config file: " + file.string());

    KeyValueConfig config;
    config.base_dir = file.has_parent_path() ? file.parent_path() : ".";
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(file.string() + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError(file.string() + ":" + std::to_string(line_no) + ": empty key");
        config.values[key] = value;
    }
    return config;
}

EvalConfig eval_config_from(const KeyValueConfig& config) {
    EvalConfig eval;
    eval.matching_threshold = config.get_double("matching.threshold", 0.5);
    if (eval.matching_threshold < 0.0 || eval.matching_threshold > 1.0)
        throw ConfigError("matching.threshold must lie in [0,1]");

    eval.costs.node_insert = config.get_double("cost.node_insert", 1.0);
    eval.costs.node_delete = config.get_double("cost.node_delete", 1.0);
    eval.costs.node_substitute = config.get_double("cost.node_substitute", 1.0);
    eval.costs.edge_insert = config.get_double("cost.edge_insert", 1.0);
    eval.costs.edge_delete = config.get_double("cost.edge_delete", 1.0);
    for (double c : {eval.costs.node_insert, eval.costs.node_delete, eval.costs.node_substitute,
                     eval.costs.edge_insert, eval.costs.edge_delete})
        if (c <= 0.0) throw ConfigError("edit costs must be strictly positive");

    eval.weights.pr = config.get_double("weights.pr", 1.0 / 3.0);
    eval.weights.ged = config.get_double("weights.ged", 1.0 / 3.0);
    eval.weights.behavior = config.get_double("weights.behavior", 1.0 / 3.0);
    try {
        validate(eval.weights);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    eval.ged_node_budget = config.get_int("ged.node_budget", 12);
    eval.bounds.loop_bound = config.get_int("traces.loop_bound", 1);
    eval.bounds.max_traces = config.get_int("traces.max_traces", 10000);
    eval.bounds.max_len = config.get_int("traces.max_len", 64);
    eval.bounds.token_cap = config.get_int("traces.token_cap", 64);
    return eval;
}

HarnessConfig harness_config_from(const KeyValueConfig& config) {
    HarnessConfig harness;
    harness.eval = eval_config_from(config);

    std::string models = config.get_string("models", "");
    std::stringstream list(models);
    std::string item;
    while (std::getline(list, item, ',')) {
        std::string name = trim(item);
        if (!name.empty()) harness.models.push_back(name);
    }
    if (harness.models.empty()) throw ConfigError("config key 'models' lists no model names");

    harness.temperature = config.get_double("temperature", 0.0);
    if (config.has("seed")) harness.seed = config.get_int("seed", 0);
    harness.repetitions = config.get_int("repetitions", 1);
    harness.max_retries = config.get_int("max_retries", 1);
    harness.timeout_seconds = config.get_double("timeout_seconds", 60.0);
    harness.parallelism = config.get_int("parallelism", 1);
    if (harness.repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (harness.max_retries < 0) throw ConfigError("max_retries must be >= 0");
    if (harness.timeout_seconds <= 0.0) throw ConfigError("timeout_seconds must be positive");
    if (harness.parallelism < 1) throw ConfigError("parallelism must be >= 1");

    std::string mode = config.get_string("generator.mode", "replay");
    if (mode == "replay") {
        harness.mode = GeneratorMode::Replay;
        harness.replay_dir = config.get_path("generator.replay_dir");
        if (harness.replay_dir.empty())
            throw ConfigError("replay mode requires generator.replay_dir");
    } else if (mode == "http") {
        harness.mode = GeneratorMode::Http;
        harness.endpoint_url = config.get_string("generator.url", "");
        if (harness.endpoint_url.empty())
            throw ConfigError("http mode requires generator.url");
    } else {
        throw ConfigError("generator.mode must be 'replay' or 'http'");
    }

    harness.pricing_file = config.get_path("pricing_file");
    if (harness.pricing_file.empty())
        throw ConfigError("config key 'pricing_file' is required");

    std::filesystem::path prompt_file = config.get_path("prompt_file");
    harness.prompt_template = prompt_file.empty()
                                  ? std::string(kDefaultPromptTemplate)
                                  : read_file(prompt_file, "prompt template");
    if (harness.prompt_template.find("{description}") == std::string::npos)
        throw ConfigError("prompt template lacks the {description} placeholder");
    return harness;
}

std::vector<PricingEntry> load_pricing(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read pricing table: " + file.string());

    std::vector<PricingEntry> table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        if (stripped.rfind("model_name", 0) == 0) continue;  // header row

        std::stringstream fields(stripped);
        PricingEntry entry;
        std::string field;
        try {
            if (!std::getline(fields, field, ',')) throw std::invalid_argument("model");
            entry.model_name = trim(field);
            if (!std::getline(fields, field, ',')) throw std::invalid_argument("input price");
            entry.usd_per_million_input = std::stod(field);
            if (!std::getline(fields, field, ',')) throw std::invalid_argument("output price");
            entry.usd_per_million_output = std::stod(field);
            if (!std::getline(fields, field, ',')) throw std::invalid_argument("call price");
            entry.usd_per_call = std::stod(field);
        } catch (const std::exception&) {
            throw ConfigError(file.string() + ":" + std::to_string(line_no) +
                              ": expected model_name,in_price,out_price,call_price");
        }
        if (entry.model_name.empty() || entry.usd_per_million_input < 0.0 ||
            entry.usd_per_million_output < 0.0 || entry.usd_per_call < 0.0)
            throw ConfigError(file.string() + ":" + std::to_string(line_no) +
                              ": prices must be non-negative");
        table.push_back(std::move(entry));
    }
    return table;
}

const PricingEntry& pricing_for(const std::vector<PricingEntry>& table,
                                const std::string& model_name) {
    for (const PricingEntry& entry : table)
        if (entry.model_name == model_name) return entry;
    throw ConfigError("no pricing entry for model '" + model_name + "'");
}

}  // namespace bpmneval
