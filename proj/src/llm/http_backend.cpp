#include "uirepro/llm/http_backend.hpp"

#include "uirepro/errors.hpp"

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <thread>

namespace uirepro {

using nlohmann::json;

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
    const std::string& url = config_.endpoint;
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos ||
        (url.substr(0, scheme_end) != "http" && url.substr(0, scheme_end) != "https")) {
        throw GatewayError("endpoint must start with http:// or https://, got '" + url + "'");
    }
    size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        origin_ = url;
    } else {
        origin_ = url.substr(0, path_start);
        base_path_ = url.substr(path_start);
        while (!base_path_.empty() && base_path_.back() == '/') {
            base_path_.pop_back();
        }
    }
    if (config_.model.empty()) {
        throw GatewayError("a model name is required for an HTTP endpoint");
    }
}

namespace {

// nullopt + `error` set when the body is malformed (treated as retryable).
std::optional<BackendReply> parse_completion_body(const std::string& body, std::string& error) {
    json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
        error = "response body is not JSON";
        return std::nullopt;
    }
    if (!doc.is_object() || !doc.contains("choices") || !doc.at("choices").is_array() ||
        doc.at("choices").empty()) {
        error = "response has no choices";
        return std::nullopt;
    }
    const json& first = doc.at("choices").at(0);
    if (!first.is_object() || !first.contains("message") || !first.at("message").is_object() ||
        !first.at("message").contains("content") || !first.at("message").at("content").is_string()) {
        error = "response choice has no message content";
        return std::nullopt;
    }
    BackendReply reply;
    reply.content = first.at("message").at("content").get<std::string>();
    if (doc.contains("usage") && doc.at("usage").is_object()) {
        const json& usage = doc.at("usage");
        if (usage.contains("prompt_tokens") && usage.at("prompt_tokens").is_number()) {
            reply.prompt_tokens = usage.at("prompt_tokens").get<int64_t>();
        }
        if (usage.contains("completion_tokens") && usage.at("completion_tokens").is_number()) {
            reply.completion_tokens = usage.at("completion_tokens").get<int64_t>();
        }
    }
    return reply;
}

} // namespace

BackendReply HttpBackend::send(const PromptContext& ctx, const std::string& prompt) {
    json body = {
        {"model", config_.model},
        {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
        {"temperature", 0},
    };
    (void)ctx;

    std::string last_failure = "no attempt made";
    int attempts = config_.retries + 1;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0 && config_.backoff_base_ms > 0) {
            int64_t delay = static_cast<int64_t>(config_.backoff_base_ms) << (attempt - 1);
            std::this_thread::sleep_for(std::chrono::milliseconds(delay));
        }
        httplib::Client client(origin_);
        client.set_connection_timeout(config_.timeout_seconds);
        client.set_read_timeout(config_.timeout_seconds);
        httplib::Headers headers;
        if (!config_.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + config_.api_key);
        }
        httplib::Result result = client.Post(base_path_ + "/chat/completions", headers,
                                             body.dump(), "application/json");
        if (!result) {
            last_failure = "transport error: " + httplib::to_string(result.error());
            continue;
        }
        if (result->status == 401 || result->status == 403) {
            throw AuthError("endpoint rejected the API key (HTTP " +
                            std::to_string(result->status) + ")");
        }
        if (result->status == 429 || result->status >= 500) {
            last_failure = "HTTP " + std::to_string(result->status);
            continue;
        }
        if (result->status < 200 || result->status >= 300) {
            throw GatewayError("endpoint returned HTTP " + std::to_string(result->status) + ": " +
                               result->body.substr(0, 200));
        }
        if (std::optional<BackendReply> reply = parse_completion_body(result->body, last_failure)) {
            return *reply;
        }
    }
    throw GatewayError("request failed after " + std::to_string(attempts) +
                       " attempts; last failure: " + last_failure);
}

} // namespace uirepro
