#include "uirepro/llm/mock_backend.hpp"

#include "uirepro/errors.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace uirepro {

using nlohmann::json;

const char* role_script_name(PromptRole role) {
    switch (role) {
    case PromptRole::ReportAnalysis: return "report_analysis";
    case PromptRole::ActionFilter: return "action_filter";
    case PromptRole::InputTextGen: return "input_text";
    case PromptRole::TransitionSummary: return "transition_summary";
    case PromptRole::PathEvaluation: return "path_evaluation";
    case PromptRole::BugVerification: return "bug_verification";
    }
    return "?";
}

std::optional<PromptRole> role_from_script_name(const std::string& name) {
    if (name == "report_analysis") return PromptRole::ReportAnalysis;
    if (name == "action_filter") return PromptRole::ActionFilter;
    if (name == "input_text") return PromptRole::InputTextGen;
    if (name == "transition_summary") return PromptRole::TransitionSummary;
    if (name == "path_evaluation") return PromptRole::PathEvaluation;
    if (name == "bug_verification") return PromptRole::BugVerification;
    return std::nullopt;
}

MockBackend::MockBackend(std::vector<MockRule> rules) : rules_(std::move(rules)) {}

std::string MockBackend::default_response(PromptRole role) {
    switch (role) {
    case PromptRole::ReportAnalysis:
        // Deliberately unusable: report analysis has no safe neutral answer,
        // so an unscripted mock surfaces as UnparseableSpecificationError.
        return "";
    case PromptRole::ActionFilter:
        return R"({"keep": "all"})";
    case PromptRole::InputTextGen:
        return "test";
    case PromptRole::TransitionSummary:
        return "Performed {{action}}; the screen now shows: {{after state}}";
    case PromptRole::PathEvaluation:
        return R"({"continue": "all"})";
    case PromptRole::BugVerification:
        return R"({"confirmed": false, "explanation": "no scripted verdict for this path"})";
    }
    return "";
}

int64_t MockBackend::count_tokens(const std::string& text) {
    int64_t count = 0;
    bool in_token = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++count;
        }
    }
    return count;
}

namespace {

// Unlike prompt templates, unknown placeholders here render as "" — scripts
// may reference attributes a role does not carry.
std::string substitute_lenient(const std::string& text,
                               const std::map<std::string, std::string>& values) {
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
        if (it != values.end()) {
            out += it->second;
        }
        pos = close + 2;
    }
}

} // namespace

BackendReply MockBackend::send(const PromptContext& ctx, const std::string& prompt) {
    std::string reply_template = default_response(ctx.role);
    for (const MockRule& rule : rules_) {
        if (rule.role != ctx.role) {
            continue;
        }
        bool hit = rule.match_regex ? std::regex_search(prompt, *rule.match_regex)
                                    : prompt.find(rule.match) != std::string::npos;
        if (hit) {
            reply_template = rule.respond;
            break;
        }
    }
    BackendReply reply;
    reply.content = substitute_lenient(reply_template, ctx.attributes);
    reply.prompt_tokens = count_tokens(prompt);
    reply.completion_tokens = count_tokens(reply.content);
    return reply;
}

std::vector<MockRule> parse_mock_script(const std::string& json_text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaViolationError(origin + ": " + e.what());
    }
    if (!doc.is_array()) {
        throw SchemaViolationError(origin + ": expected a top-level array of rules");
    }
    std::vector<MockRule> rules;
    for (size_t i = 0; i < doc.size(); ++i) {
        const json& entry = doc.at(i);
        std::string path = origin + "[" + std::to_string(i) + "]";
        if (!entry.is_object()) {
            throw SchemaViolationError(path + ": expected an object");
        }
        MockRule rule;
        if (!entry.contains("role") || !entry.at("role").is_string()) {
            throw SchemaViolationError(path + ": missing string field 'role'");
        }
        std::optional<PromptRole> role = role_from_script_name(entry.at("role").get<std::string>());
        if (!role) {
            throw SchemaViolationError(path + ".role: unknown role '" +
                                       entry.at("role").get<std::string>() + "'");
        }
        rule.role = *role;
        if (entry.contains("match") && entry.contains("match_regex")) {
            throw SchemaViolationError(path + ": 'match' and 'match_regex' are mutually exclusive");
        }
        if (entry.contains("match")) {
            if (!entry.at("match").is_string()) {
                throw SchemaViolationError(path + ".match: expected a string");
            }
            rule.match = entry.at("match").get<std::string>();
        }
        if (entry.contains("match_regex")) {
            if (!entry.at("match_regex").is_string()) {
                throw SchemaViolationError(path + ".match_regex: expected a string");
            }
            rule.match_regex_source = entry.at("match_regex").get<std::string>();
            try {
                rule.match_regex = std::make_shared<const std::regex>(*rule.match_regex_source,
                                                                      std::regex::ECMAScript);
            } catch (const std::regex_error& e) {
                throw SchemaViolationError(path + ".match_regex: invalid regex: " + e.what());
            }
        }
        if (!entry.contains("respond") || !entry.at("respond").is_string()) {
            throw SchemaViolationError(path + ": missing string field 'respond'");
        }
        rule.respond = entry.at("respond").get<std::string>();
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::vector<MockRule> load_mock_script(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UnreadableFileError("cannot open mock script file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw UnreadableFileError("cannot read mock script file: " + path.string());
    }
    return parse_mock_script(buffer.str(), path.filename().string());
}

} // namespace uirepro
