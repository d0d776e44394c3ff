#pragma once

#include "uirepro/llm/ledger.hpp"
#include "uirepro/llm/roles.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace uirepro {

// Transport result for one completion request.
struct BackendReply {
    std::string content;
    int64_t prompt_tokens = 0;
    int64_t completion_tokens = 0;
};

// A completion transport: the scripted mock or a real HTTP endpoint. The full
// context is passed alongside the rendered prompt so the mock can substitute
// attributes into its canned replies.
class LlmBackend {
public:
    virtual ~LlmBackend() = default;
    virtual BackendReply send(const PromptContext& ctx, const std::string& prompt) = 0;
};

// Examines a reply's content; nullopt means "usable", otherwise a short
// description of what is wrong with it (fed back to the model on re-ask).
using ReplyValidator = std::function<std::optional<std::string>(const std::string& content)>;

struct ValidatedReply {
    bool ok = false;
    LLMResponse response;
    std::string error; // last validator complaint when !ok
};

// Front door for all model traffic: renders prompts, delegates to the
// backend, enforces the optional token cap and keeps the usage ledger.
class LlmGateway {
public:
    explicit LlmGateway(std::unique_ptr<LlmBackend> backend, PriceTable prices = {},
                        std::optional<int64_t> token_cap = std::nullopt);

    // One completion. Throws GatewayError (or a subtype) on transport
    // failure and BudgetExceededError when the token cap is already spent.
    LLMResponse complete(const PromptContext& ctx);

    // complete() plus format enforcement: on a validator complaint the
    // request is re-asked (at most `max_attempts` tries total) with a
    // "format error" attribute describing the problem. Never throws on
    // validation failure — the caller decides how to fall back.
    ValidatedReply complete_validated(const PromptContext& ctx, const ReplyValidator& validator,
                                      int max_attempts = 3);

    LedgerSnapshot ledger() const { return ledger_.snapshot(); }
    PriceTable prices() const { return ledger_.prices(); }

private:
    std::unique_ptr<LlmBackend> backend_;
    UsageLedger ledger_;
    std::optional<int64_t> token_cap_;
};

} // namespace uirepro
