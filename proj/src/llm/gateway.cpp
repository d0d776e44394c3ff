#include "uirepro/llm/gateway.hpp"

#include "uirepro/errors.hpp"
#include "uirepro/llm/prompt_templates.hpp"

namespace uirepro {

LlmGateway::LlmGateway(std::unique_ptr<LlmBackend> backend, PriceTable prices,
                       std::optional<int64_t> token_cap)
    : backend_(std::move(backend)), ledger_(prices), token_cap_(token_cap) {
    if (!backend_) {
        throw Error("LlmGateway requires a backend");
    }
}

LLMResponse LlmGateway::complete(const PromptContext& ctx) {
    if (token_cap_ && ledger_.snapshot().total_tokens() >= *token_cap_) {
        throw BudgetExceededError("token cap of " + std::to_string(*token_cap_) +
                                  " tokens reached");
    }
    std::string prompt = build_prompt(ctx);
    BackendReply reply = backend_->send(ctx, prompt);
    ledger_.record(ctx.role, reply.prompt_tokens, reply.completion_tokens);
    LLMResponse response;
    response.content = std::move(reply.content);
    response.prompt_tokens = reply.prompt_tokens;
    response.completion_tokens = reply.completion_tokens;
    return response;
}

ValidatedReply LlmGateway::complete_validated(const PromptContext& ctx,
                                              const ReplyValidator& validator, int max_attempts) {
    ValidatedReply out;
    PromptContext attempt_ctx = ctx;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        out.response = complete(attempt_ctx);
        std::optional<std::string> complaint = validator(out.response.content);
        if (!complaint) {
            out.ok = true;
            out.error.clear();
            return out;
        }
        out.error = *complaint;
        attempt_ctx = ctx;
        attempt_ctx.attributes["format error"] = *complaint;
    }
    out.ok = false;
    return out;
}

} // namespace uirepro
