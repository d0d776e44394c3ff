#include "uirepro/evaluate/evaluator.hpp"

#include "uirepro/errors.hpp"
#include "uirepro/explore/explorer.hpp"
#include "uirepro/llm/envelopes.hpp"
#include "uirepro/ui/render.hpp"

#include <algorithm>

namespace uirepro {

using nlohmann::json;

const char* to_string(PathDecision decision) {
    switch (decision) {
    case PathDecision::Continue: return "Continue";
    case PathDecision::Prune: return "Prune";
    case PathDecision::CandidateSuccess: return "CandidateSuccess";
    }
    return "?";
}

namespace {

struct Directive {
    std::optional<long long> path_index;
    std::optional<std::string> match;
    PathDecision decision = PathDecision::Prune;
    int rank = 0;
};

struct EvaluationReply {
    bool continue_all = false;
    std::vector<Directive> directives;
    PathDecision default_decision = PathDecision::Prune;
};

std::optional<PathDecision> parse_decision(const json& value) {
    if (!value.is_string()) {
        return std::nullopt;
    }
    std::string raw = value.get<std::string>();
    if (raw == "continue") return PathDecision::Continue;
    if (raw == "prune") return PathDecision::Prune;
    if (raw == "candidate_success") return PathDecision::CandidateSuccess;
    return std::nullopt;
}

// nullopt on success; otherwise what was wrong (fed back on re-ask).
std::optional<std::string> parse_evaluation_reply(const std::string& content,
                                                  EvaluationReply& out) {
    std::optional<json> doc = extract_json(content);
    if (!doc || !doc->is_object()) {
        return "the reply did not contain a JSON object";
    }
    EvaluationReply reply;
    if (doc->contains("continue") && doc->at("continue").is_string() &&
        doc->at("continue").get<std::string>() == "all") {
        reply.continue_all = true;
        out = std::move(reply);
        return std::nullopt;
    }
    if (!doc->contains("verdicts") || !doc->at("verdicts").is_array()) {
        return "expected a \"verdicts\" array (or {\"continue\": \"all\"})";
    }
    int position = 0;
    for (const json& entry : doc->at("verdicts")) {
        if (!entry.is_object()) {
            return "each verdict must be an object";
        }
        Directive directive;
        if (entry.contains("path")) {
            if (!entry.at("path").is_number_integer()) {
                return "verdict \"path\" must be an integer index";
            }
            directive.path_index = entry.at("path").get<long long>();
        } else if (entry.contains("match")) {
            if (!entry.at("match").is_string() ||
                entry.at("match").get<std::string>().empty()) {
                return "verdict \"match\" must be a non-empty string";
            }
            directive.match = entry.at("match").get<std::string>();
        } else {
            return "each verdict needs a \"path\" index or a \"match\" substring";
        }
        if (!entry.contains("decision")) {
            return "each verdict needs a \"decision\"";
        }
        std::optional<PathDecision> decision = parse_decision(entry.at("decision"));
        if (!decision) {
            return "\"decision\" must be \"continue\", \"prune\" or \"candidate_success\"";
        }
        directive.decision = *decision;
        directive.rank = position;
        if (entry.contains("rank")) {
            if (!entry.at("rank").is_number_integer()) {
                return "\"rank\" must be an integer";
            }
            directive.rank = entry.at("rank").get<int>();
        }
        reply.directives.push_back(std::move(directive));
        ++position;
    }
    if (doc->contains("default")) {
        std::optional<PathDecision> fallback = parse_decision(doc->at("default"));
        if (!fallback) {
            return "\"default\" must be \"continue\", \"prune\" or \"candidate_success\"";
        }
        reply.default_decision = *fallback;
    }
    out = std::move(reply);
    return std::nullopt;
}

} // namespace

std::vector<PathVerdict> evaluate_paths(const std::vector<ExplorationPath>& paths,
                                        const ReproductionSpecification& spec,
                                        LlmGateway& gateway, int beam) {
    if (beam < 1) {
        throw Error("beam width must be at least 1");
    }
    std::vector<std::string> rendered;
    rendered.reserve(paths.size());
    std::string path_list;
    for (size_t i = 0; i < paths.size(); ++i) {
        rendered.push_back(render_path(paths[i], kPathRenderTail));
        path_list += "Path " + std::to_string(i) + ": " + rendered.back() + "\n";
    }

    PromptContext ctx;
    ctx.role = PromptRole::PathEvaluation;
    ctx.attributes["reproduction specification"] = render_specification(spec);
    ctx.attributes["path list"] = path_list;

    EvaluationReply reply;
    ValidatedReply validated = gateway.complete_validated(
        ctx,
        [&reply](const std::string& content) { return parse_evaluation_reply(content, reply); });

    std::vector<PathVerdict> verdicts(paths.size());
    std::vector<int> ranks(paths.size(), 0);
    if (!validated.ok) {
        // Unusable evaluation: keep the longest paths alive at beam width.
        std::vector<size_t> order(paths.size());
        for (size_t i = 0; i < paths.size(); ++i) {
            order[i] = i;
        }
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            if (paths[a].length() != paths[b].length()) {
                return paths[a].length() > paths[b].length();
            }
            return paths[a].path_id < paths[b].path_id;
        });
        for (size_t pos = 0; pos < order.size(); ++pos) {
            size_t i = order[pos];
            bool keep = pos < static_cast<size_t>(beam);
            verdicts[i].decision = keep ? PathDecision::Continue : PathDecision::Prune;
            verdicts[i].rationale = keep ? "evaluation output unusable; kept as one of the longest paths"
                                         : "evaluation output unusable; outside the beam";
            ranks[i] = static_cast<int>(pos);
        }
    } else if (reply.continue_all) {
        for (size_t i = 0; i < paths.size(); ++i) {
            verdicts[i].decision = PathDecision::Continue;
            verdicts[i].rationale = "evaluation continued every path";
            ranks[i] = static_cast<int>(i);
        }
    } else {
        for (size_t i = 0; i < paths.size(); ++i) {
            const Directive* hit = nullptr;
            for (const Directive& directive : reply.directives) {
                bool matches = directive.path_index
                                   ? *directive.path_index == static_cast<long long>(i)
                                   : rendered[i].find(*directive.match) != std::string::npos;
                if (matches) {
                    hit = &directive;
                    break;
                }
            }
            if (hit != nullptr) {
                verdicts[i].decision = hit->decision;
                verdicts[i].rationale = hit->path_index
                                            ? "evaluation addressed this path by index"
                                            : "evaluation matched: " + *hit->match;
                ranks[i] = hit->rank;
            } else {
                verdicts[i].decision = reply.default_decision;
                verdicts[i].rationale = "no verdict addressed this path; applied the default";
                ranks[i] = static_cast<int>(reply.directives.size() + i);
            }
        }
    }

    for (size_t i = 0; i < paths.size(); ++i) {
        verdicts[i].path_id = paths[i].path_id;
        if (!paths[i].crashed()) {
            continue;
        }
        if (spec.expects_crash) {
            if (verdicts[i].decision != PathDecision::CandidateSuccess) {
                verdicts[i].decision = PathDecision::CandidateSuccess;
                verdicts[i].rationale = "a crash was observed and the bug expects one";
            }
        } else if (verdicts[i].decision == PathDecision::Continue) {
            verdicts[i].decision = PathDecision::Prune;
            verdicts[i].rationale = "the path ended in a crash and cannot be extended";
        }
    }

    // Enforce the beam on Continue verdicts: best rank first, ties by id.
    std::vector<size_t> continued;
    for (size_t i = 0; i < verdicts.size(); ++i) {
        if (verdicts[i].decision == PathDecision::Continue) {
            continued.push_back(i);
        }
    }
    if (continued.size() > static_cast<size_t>(beam)) {
        std::stable_sort(continued.begin(), continued.end(), [&](size_t a, size_t b) {
            if (ranks[a] != ranks[b]) {
                return ranks[a] < ranks[b];
            }
            return paths[a].path_id < paths[b].path_id;
        });
        for (size_t pos = static_cast<size_t>(beam); pos < continued.size(); ++pos) {
            verdicts[continued[pos]].decision = PathDecision::Prune;
            verdicts[continued[pos]].rationale = "outside the beam of " + std::to_string(beam);
        }
    }
    return verdicts;
}

VerificationResult verify_bug(const ExplorationPath& path, const ReproductionSpecification& spec,
                              const std::optional<std::string>& device_crash_log,
                              LlmGateway& gateway) {
    VerificationResult result;
    if (spec.expects_crash) {
        // Ground truth only: a claimed crash without a crash log is not a
        // reproduction, no matter how confident the narrative sounds.
        if (device_crash_log && !device_crash_log->empty()) {
            result.confirmed = true;
            result.evidence = "crash log captured: " + *device_crash_log;
        } else {
            result.confirmed = false;
            result.evidence = "the bug expects a crash but no crash log was captured";
        }
        return result;
    }
    if (path.crashed()) {
        result.confirmed = false;
        result.evidence = "the app crashed, but the report does not describe a crash";
        return result;
    }
    if (path.transitions.empty() || !path.transitions.back().after) {
        result.confirmed = false;
        result.evidence = "no final screen available to verify against";
        return result;
    }

    PromptContext ctx;
    ctx.role = PromptRole::BugVerification;
    ctx.attributes["reproduction specification"] = render_specification(spec);
    ctx.attributes["path"] = render_path(path, kPathRenderTail);
    ctx.attributes["after state"] = render_state_summary(*path.transitions.back().after);

    bool confirmed = false;
    std::string explanation;
    ValidatedReply validated = gateway.complete_validated(ctx, [&](const std::string& content) {
        std::optional<json> doc = extract_json(content);
        if (!doc || !doc->is_object() || !doc->contains("confirmed") ||
            !doc->at("confirmed").is_boolean()) {
            return std::optional<std::string>(
                "expected {\"confirmed\": true or false, \"explanation\": \"...\"}");
        }
        confirmed = doc->at("confirmed").get<bool>();
        explanation = doc->contains("explanation") && doc->at("explanation").is_string()
                          ? doc->at("explanation").get<std::string>()
                          : "";
        return std::optional<std::string>();
    });
    if (!validated.ok) {
        result.confirmed = false;
        result.evidence = "verification output unusable: " + validated.error;
        return result;
    }
    result.confirmed = confirmed;
    result.evidence = explanation.empty() ? "verification gave no explanation" : explanation;
    return result;
}

} // namespace uirepro
