#include "uirepro/llm/prompt_templates.hpp"

#include "uirepro/errors.hpp"

#include <algorithm>

namespace uirepro {

const char* const kPromptTemplateVersion = "1";

const char* to_string(PromptRole role) {
    switch (role) {
    case PromptRole::ReportAnalysis: return "ReportAnalysis";
    case PromptRole::ActionFilter: return "ActionFilter";
    case PromptRole::InputTextGen: return "InputTextGen";
    case PromptRole::TransitionSummary: return "TransitionSummary";
    case PromptRole::PathEvaluation: return "PathEvaluation";
    case PromptRole::BugVerification: return "BugVerification";
    }
    return "?";
}

namespace {

const std::string kReportAnalysisTemplate = R"(You are an Android testing assistant. Read the bug report below and distill it into a reproduction specification.

Bug report:
{{bug report}}

Respond with a single JSON object and nothing else:
{"steps": ["<one imperative sentence per reproduction step>"], "symptoms": ["<observable faulty behaviour>"], "expects_crash": <true or false>}
Rules:
- "steps" lists the concrete UI interactions in order; if the report gives none, infer the most plausible ones.
- "symptoms" describes what goes wrong, quoting the report where possible.
- "expects_crash" is true exactly when a symptom denotes a crash, force close or fatal exception.)";

const std::string kActionFilterTemplate = R"(You are guiding the reproduction of a bug in an Android app.

Reproduction specification:
{{reproduction specification}}

Steps taken so far:
{{path}}

The current screen offers these actions (index in brackets):
{{widget list}}

Select the actions worth trying next to make progress on the reproduction steps. Respond with a single JSON object and nothing else:
{"keep": [<action indices, most promising first>]}
or {"keep": "all"} to keep every action.)";

const std::string kInputTextGenTemplate = R"(You are guiding the reproduction of a bug in an Android app.

Reproduction specification:
{{reproduction specification}}

Steps taken so far:
{{path}}

The next step types text into this widget:
{{widget}}

Reply with the exact text to type and nothing else. If the specification dictates a value, use it verbatim; otherwise choose a short plausible value.)";

const std::string kTransitionSummaryTemplate = R"(You observed one UI action in an Android app.

Screen before:
{{before state}}

Action performed:
{{action}}

Screen after:
{{after state}}

Describe the effect of the action in one sentence, mentioning what changed on the screen. Reply with the sentence only.)";

const std::string kPathEvaluationTemplate = R"(You are guiding the reproduction of a bug in an Android app.

Reproduction specification:
{{reproduction specification}}

Candidate interaction paths:
{{path list}}

For each path decide: does it already exhibit the faulty behaviour ("candidate_success"), is it still promising ("continue"), or should it be abandoned ("prune")? Respond with a single JSON object and nothing else:
{"verdicts": [{"path": <index>, "decision": "continue"}, ...], "default": "prune"}
Notes:
- Order "continue" verdicts from most to least promising.
- A path may also be addressed by a quoted excerpt: {"match": "<substring of the path>", "decision": "..."}.
- {"continue": "all"} keeps every path.)";

const std::string kBugVerificationTemplate = R"(You are verifying whether a bug was reproduced in an Android app.

Reproduction specification:
{{reproduction specification}}

Interaction path taken:
{{path}}

Final screen:
{{after state}}

Does the final screen show the faulty behaviour described by the specification? Respond with a single JSON object and nothing else:
{"confirmed": true or false, "explanation": "<one sentence>"})";

const std::string kFormatErrorSuffix = R"(

Your previous reply could not be used: {{format error}}
Reply again following the required format exactly.)";

const std::vector<std::string> kReportAnalysisAttrs = {"bug report"};
const std::vector<std::string> kActionFilterAttrs = {"reproduction specification", "path",
                                                     "widget list"};
const std::vector<std::string> kInputTextGenAttrs = {"reproduction specification", "path",
                                                     "widget"};
const std::vector<std::string> kTransitionSummaryAttrs = {"before state", "action", "after state"};
const std::vector<std::string> kPathEvaluationAttrs = {"reproduction specification", "path list"};
const std::vector<std::string> kBugVerificationAttrs = {"reproduction specification", "path",
                                                        "after state"};

std::string substitute(const std::string& text, const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(text.size());
    size_t pos = 0;
    for (;;) {
        size_t open = text.find("{{", pos);
        if (open == std::string::npos) {
            out.append(text, pos, std::string::npos);
            return out;
        }
        size_t close = text.find("}}", open + 2);
        if (close == std::string::npos) {
            out.append(text, pos, std::string::npos);
            return out;
        }
        out.append(text, pos, open - pos);
        std::string name = text.substr(open + 2, close - open - 2);
        auto it = values.find(name);
        if (it == values.end()) {
            throw MissingAttributeError("prompt attribute '" + name + "' was not supplied");
        }
        out += it->second;
        pos = close + 2;
    }
}

} // namespace

const std::string& prompt_template(PromptRole role) {
    switch (role) {
    case PromptRole::ReportAnalysis: return kReportAnalysisTemplate;
    case PromptRole::ActionFilter: return kActionFilterTemplate;
    case PromptRole::InputTextGen: return kInputTextGenTemplate;
    case PromptRole::TransitionSummary: return kTransitionSummaryTemplate;
    case PromptRole::PathEvaluation: return kPathEvaluationTemplate;
    case PromptRole::BugVerification: return kBugVerificationTemplate;
    }
    throw Error("unknown prompt role");
}

const std::vector<std::string>& required_attributes(PromptRole role) {
    switch (role) {
    case PromptRole::ReportAnalysis: return kReportAnalysisAttrs;
    case PromptRole::ActionFilter: return kActionFilterAttrs;
    case PromptRole::InputTextGen: return kInputTextGenAttrs;
    case PromptRole::TransitionSummary: return kTransitionSummaryAttrs;
    case PromptRole::PathEvaluation: return kPathEvaluationAttrs;
    case PromptRole::BugVerification: return kBugVerificationAttrs;
    }
    throw Error("unknown prompt role");
}

std::string build_prompt(const PromptContext& ctx) {
    const std::vector<std::string>& required = required_attributes(ctx.role);
    for (const std::string& name : required) {
        if (ctx.attributes.find(name) == ctx.attributes.end()) {
            throw MissingAttributeError(std::string(to_string(ctx.role)) +
                                        " prompt is missing attribute '" + name + "'");
        }
    }
    for (const auto& [name, value] : ctx.attributes) {
        (void)value;
        bool known = name == "format error" ||
                     std::find(required.begin(), required.end(), name) != required.end();
        if (!known) {
            throw MissingAttributeError(std::string(to_string(ctx.role)) +
                                        " prompt does not accept attribute '" + name + "'");
        }
    }
    std::string prompt = substitute(prompt_template(ctx.role), ctx.attributes);
    if (ctx.attributes.find("format error") != ctx.attributes.end()) {
        prompt += substitute(kFormatErrorSuffix, ctx.attributes);
    }
    return prompt;
}

} // namespace uirepro
