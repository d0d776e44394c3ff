#pragma once

#include "uirepro/llm/gateway.hpp"

#include <filesystem>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace uirepro {

// One scripted reply: fires when the request role matches and the rendered
// prompt contains `match` (or matches `match_regex`). An empty substring
// matches every prompt. `respond` may embed {{attribute}} placeholders,
// replaced from the request's attributes (unknown names become empty).
struct MockRule {
    PromptRole role = PromptRole::ReportAnalysis;
    std::string match;
    std::optional<std::string> match_regex_source;
    std::shared_ptr<const std::regex> match_regex;
    std::string respond;
};

// Deterministic scripted backend. The first rule (in script order) that
// matches wins; with no match a per-role neutral default applies. Token
// counts are whitespace-separated token counts of prompt and reply, so
// ledger arithmetic is exercised end to end without a live model.
class MockBackend : public LlmBackend {
public:
    explicit MockBackend(std::vector<MockRule> rules = {});

    BackendReply send(const PromptContext& ctx, const std::string& prompt) override;

    static std::string default_response(PromptRole role);
    static int64_t count_tokens(const std::string& text);

    const std::vector<MockRule>& rules() const { return rules_; }

private:
    std::vector<MockRule> rules_;
};

// Script file: a JSON array of {"role": "...", "match": "..."} rules — see
// docs/file-formats.md. Throws UnreadableFileError / SchemaViolationError.
std::vector<MockRule> load_mock_script(const std::filesystem::path& path);
std::vector<MockRule> parse_mock_script(const std::string& json_text,
                                        const std::string& origin = "<string>");

// snake_case names used in script files ("report_analysis", ...).
const char* role_script_name(PromptRole role);
std::optional<PromptRole> role_from_script_name(const std::string& name);

} // namespace uirepro
