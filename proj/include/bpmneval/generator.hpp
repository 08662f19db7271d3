#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace bpmneval {

struct GeneratorRequest {
    std::string model_name;
    std::string prompt;
    double temperature = 0.0;
    std::optional<long> seed;
    double timeout_seconds = 60.0;
    // Replay bookkeeping; not part of the HTTP wire format.
    std::string case_id;
    int repetition = 0;
    int attempt = 0;
};

struct GeneratorResponse {
    std::string text;
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
};

class GeneratorError : public std::runtime_error {
public:
    GeneratorError(const std::string& message, bool transport)
        : std::runtime_error(message), transport_(transport) {}

    /// Transport-level failures (endpoint unreachable, broken response)
    /// abort a case; content-level problems are retried.
    bool transport() const noexcept { return transport_; }

private:
    bool transport_;
};

class Generator {
public:
    virtual ~Generator() = default;
    virtual GeneratorResponse generate(const GeneratorRequest& request) = 0;
};

/// Reads canned responses from
///   <root>/<model_name>/<case_id>/rep<repetition>_try<attempt>.json
/// where each file holds {"text": ..., "input_tokens": n, "output_tokens": n}
/// (the HTTP response shape). A missing file is a transport error.
class ReplayGenerator : public Generator {
public:
    explicit ReplayGenerator(std::filesystem::path root) : root_(std::move(root)) {}
    GeneratorResponse generate(const GeneratorRequest& request) override;

private:
    std::filesystem::path root_;
};

/// POSTs {"model", "prompt", "temperature", "seed"} as JSON to the endpoint
/// and expects {"text", "input_tokens", "output_tokens"} back. If the
/// environment variable named by kApiKeyEnvVar is set, its value is sent as
/// a bearer token (and never written to any report).
class HttpGenerator : public Generator {
public:
    explicit HttpGenerator(std::string url) : url_(std::move(url)) {}
    GeneratorResponse generate(const GeneratorRequest& request) override;

private:
    std::string url_;
};

inline constexpr const char* kApiKeyEnvVar = "BPMNEVAL_API_KEY";

}  // namespace bpmneval
