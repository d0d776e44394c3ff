#pragma once

#include "uirepro/llm/gateway.hpp"

#include <string>

namespace uirepro {

// Connection settings for an OpenAI-compatible chat-completions endpoint.
// `endpoint` is the API base, e.g. "http://127.0.0.1:8080/v1"; requests go to
// <endpoint>/chat/completions. The API key is read from the environment by
// the CLI and passed here; an empty key sends no Authorization header.
struct HttpBackendConfig {
    std::string endpoint;
    std::string model;
    std::string api_key;
    int retries = 3;          // attempts = retries + 1
    int backoff_base_ms = 250; // doubled per retry; tests set 0/1
    int timeout_seconds = 60;
};

// Talks to a live model with temperature 0. Transient failures (transport
// errors, HTTP 429/5xx, malformed bodies) are retried with exponential
// backoff; HTTP 401/403 raise AuthError immediately; anything else
// non-retryable raises GatewayError. Missing usage fields count as 0 tokens.
class HttpBackend : public LlmBackend {
public:
    explicit HttpBackend(HttpBackendConfig config);

    BackendReply send(const PromptContext& ctx, const std::string& prompt) override;

private:
    HttpBackendConfig config_;
    std::string origin_;    // scheme://host[:port]
    std::string base_path_; // path prefix of the endpoint, may be empty
};

} // namespace uirepro
