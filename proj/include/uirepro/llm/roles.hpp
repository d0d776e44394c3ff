#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace uirepro {

// The six conversation roles the engine plays against the language model.
enum class PromptRole {
    ReportAnalysis,    // bug report -> reproduction specification
    ActionFilter,      // candidate actions -> relevant subset
    InputTextGen,      // editable widget -> text to type
    TransitionSummary, // action + before/after -> one-sentence effect
    PathEvaluation,    // candidate paths -> continue/prune/candidate verdicts
    BugVerification,   // final state vs. specification -> confirmed or not
};

const char* to_string(PromptRole role);

// A prompt request: the role plus the named attributes its template embeds.
// Attribute names are fixed per role (see prompt_templates.hpp); the optional
// "format error" attribute is added when re-asking after malformed output.
struct PromptContext {
    PromptRole role = PromptRole::ReportAnalysis;
    std::map<std::string, std::string> attributes;
};

struct LLMResponse {
    std::string content;
    int64_t prompt_tokens = 0;
    int64_t completion_tokens = 0;
};

} // namespace uirepro
