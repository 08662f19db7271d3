#include "bpmneval/generator.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace bpmneval {

namespace {

GeneratorResponse response_from_json(const std::string& body, const std::string& origin) {
    nlohmann::json parsed = nlohmann::json::parse(body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object() || !parsed.contains("text") ||
        !parsed["text"].is_string())
        throw GeneratorError("malformed generator response from " + origin, /*transport=*/true);

    GeneratorResponse response;
    response.text = parsed["text"].get<std::string>();
    response.input_tokens = parsed.value("input_tokens", std::int64_t{0});
    response.output_tokens = parsed.value("output_tokens", std::int64_t{0});
    if (response.input_tokens < 0 || response.output_tokens < 0)
        throw GeneratorError("negative token counts from " + origin, /*transport=*/true);
    return response;
}

}  // namespace

GeneratorResponse ReplayGenerator::generate(const GeneratorRequest& request) {
    std::filesystem::path file =
        root_ / request.model_name / request.case_id /
        ("rep" + std::to_string(request.repetition) + "_try" +
         std::to_string(request.attempt) + ".json");

    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw GeneratorError("no replay response at " + file.string(), /*transport=*/true);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return response_from_json(buffer.str(), file.string());
}

GeneratorResponse HttpGenerator::generate(const GeneratorRequest& request) {
    auto path_start = url_.find('/', url_.find("//") == std::string::npos
                                         ? 0
                                         : url_.find("//") + 2);
    std::string base = path_start == std::string::npos ? url_ : url_.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url_.substr(path_start);

    httplib::Client client(base);
    auto timeout = std::chrono::milliseconds(
        static_cast<long long>(request.timeout_seconds * 1000.0));
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    if (const char* key = std::getenv(kApiKeyEnvVar); key != nullptr && *key != '\0')
        client.set_bearer_token_auth(key);

    nlohmann::json body{{"model", request.model_name},
                        {"prompt", request.prompt},
                        {"temperature", request.temperature}};
    if (request.seed) body["seed"] = *request.seed;

    httplib::Result result = client.Post(path, body.dump(), "application/json");
    if (!result)
        throw GeneratorError("generator endpoint unreachable: " + url_ + " (" +
                                 httplib::to_string(result.error()) + ")",
                             /*transport=*/true);
    if (result->status < 200 || result->status >= 300)
        throw GeneratorError("generator endpoint returned HTTP " +
                                 std::to_string(result->status),
                             /*transport=*/true);
    return response_from_json(result->body, url_);
}

}  // namespace bpmneval
