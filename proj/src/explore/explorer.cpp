#include "uirepro/explore/explorer.hpp"

#include "uirepro/errors.hpp"
#include "uirepro/llm/envelopes.hpp"
#include "uirepro/ui/render.hpp"

#include <algorithm>
#include <set>

namespace uirepro {

using nlohmann::json;

namespace {

struct FilterReply {
    bool keep_all = false;
    std::vector<long long> indices;          // reply order, unvalidated
    std::vector<std::string> match_substrings;
};

// nullopt when the reply is unusable (caller falls back to the full set).
std::optional<FilterReply> parse_filter_reply(const std::string& content) {
    std::optional<json> doc = extract_json(content);
    if (!doc || !doc->is_object()) {
        return std::nullopt;
    }
    FilterReply reply;
    if (doc->contains("keep")) {
        const json& keep = doc->at("keep");
        if (keep.is_string() && keep.get<std::string>() == "all") {
            reply.keep_all = true;
        } else if (keep.is_array()) {
            for (const json& entry : keep) {
                if (!entry.is_number_integer()) {
                    return std::nullopt;
                }
                reply.indices.push_back(entry.get<long long>());
            }
        } else {
            return std::nullopt;
        }
    }
    if (doc->contains("keep_matching")) {
        const json& matching = doc->at("keep_matching");
        if (!matching.is_array()) {
            return std::nullopt;
        }
        for (const json& entry : matching) {
            if (!entry.is_string()) {
                return std::nullopt;
            }
            reply.match_substrings.push_back(entry.get<std::string>());
        }
    }
    if (!doc->contains("keep") && !doc->contains("keep_matching")) {
        return std::nullopt;
    }
    return reply;
}

} // namespace

FilterOutcome filter_actions_detailed(const std::vector<UIAction>& actions, const UIState& state,
                                      const ReproductionSpecification& spec,
                                      const ExplorationPath& path, LlmGateway& gateway) {
    FilterOutcome outcome;
    auto keep_everything = [&](bool fell_back) {
        outcome.kept = actions;
        outcome.kept_indices.resize(actions.size());
        for (size_t i = 0; i < actions.size(); ++i) {
            outcome.kept_indices[i] = i;
        }
        outcome.top_index = 0;
        outcome.fell_back = fell_back;
        return outcome;
    };
    if (actions.empty()) {
        return keep_everything(false);
    }

    PromptContext ctx;
    ctx.role = PromptRole::ActionFilter;
    ctx.attributes["reproduction specification"] = render_specification(spec);
    ctx.attributes["path"] = render_path(path, kPathRenderTail);
    ctx.attributes["widget list"] = render_widget_list(state, actions);
    LLMResponse response = gateway.complete(ctx);

    std::optional<FilterReply> reply = parse_filter_reply(response.content);
    if (!reply || reply->keep_all) {
        return keep_everything(!reply.has_value());
    }

    std::set<size_t> retained;
    std::optional<size_t> top;
    for (long long index : reply->indices) {
        if (index < 0 || index >= static_cast<long long>(actions.size())) {
            continue; // out of range: dropped, not fatal
        }
        size_t valid = static_cast<size_t>(index);
        if (!top) {
            top = valid;
        }
        retained.insert(valid);
    }
    if (!reply->match_substrings.empty()) {
        for (size_t i = 0; i < actions.size(); ++i) {
            std::string rendered = render_action(actions[i], state);
            for (const std::string& needle : reply->match_substrings) {
                if (!needle.empty() && rendered.find(needle) != std::string::npos) {
                    if (!top) {
                        top = i;
                    }
                    retained.insert(i);
                    break;
                }
            }
        }
    }
    if (retained.empty()) {
        // The model answered but selected nothing usable; keep everything
        // rather than strand the path.
        return keep_everything(true);
    }
    for (size_t index : retained) {
        outcome.kept_indices.push_back(index);
        outcome.kept.push_back(actions[index]);
    }
    outcome.top_index = *top;
    outcome.fell_back = false;
    return outcome;
}

std::vector<UIAction> filter_actions(const std::vector<UIAction>& actions, const UIState& state,
                                     const ReproductionSpecification& spec,
                                     const ExplorationPath& path, LlmGateway& gateway) {
    return filter_actions_detailed(actions, state, spec, path, gateway).kept;
}

std::string generate_input_text(const Widget& widget, const ReproductionSpecification& spec,
                                const ExplorationPath& path, LlmGateway& gateway) {
    PromptContext ctx;
    ctx.role = PromptRole::InputTextGen;
    ctx.attributes["reproduction specification"] = render_specification(spec);
    ctx.attributes["path"] = render_path(path, kPathRenderTail);
    ctx.attributes["widget"] = render_widget(widget);
    try {
        LLMResponse response = gateway.complete(ctx);
        std::string text = first_nonempty_line(response.content);
        return text.empty() ? "test" : text;
    } catch (const BudgetExceededError&) {
        throw; // an exhausted token budget must stop the session
    } catch (const GatewayError&) {
        return "test";
    }
}

std::string summarize_transition(const UIAction& action, const UIState& before,
                                 const std::optional<UIState>& after, bool crashed,
                                 const std::optional<std::string>& crash_record,
                                 LlmGateway& gateway) {
    std::string rendered = render_action(action, before);
    if (crashed) {
        // Deterministic: the crash record is evidence, not something to
        // paraphrase through a model.
        std::string record = crash_record.value_or("(no crash log captured)");
        return rendered + " crashed the app. Crash log: " + record;
    }
    PromptContext ctx;
    ctx.role = PromptRole::TransitionSummary;
    ctx.attributes["before state"] = render_state_summary(before);
    ctx.attributes["action"] = rendered;
    ctx.attributes["after state"] = after ? render_state_summary(*after) : "(no screen captured)";
    LLMResponse response = gateway.complete(ctx);
    std::string summary = trim(response.content);
    return summary.empty() ? rendered : summary;
}

std::vector<Transition> pre_explore(const UIState& state, const ReproductionSpecification& spec,
                                    const ExplorationPath& path, Device& device,
                                    LlmGateway& gateway, const PreExploreOptions& options) {
    std::vector<UIAction> actions = derive_actions(state);
    FilterOutcome filtered = filter_actions_detailed(actions, state, spec, path, gateway);

    SnapshotId origin = device.snapshot();
    std::vector<Transition> transitions;
    transitions.reserve(filtered.kept.size());
    try {
        for (const UIAction& candidate : filtered.kept) {
            UIAction action = candidate;
            if (action.kind == ActionKind::InputText && (!action.text || action.text->empty())) {
                const Widget* widget =
                    state.hierarchy ? find_widget(*state.hierarchy, action.target.value_or(""))
                                    : nullptr;
                if (widget == nullptr) {
                    throw UnresolvedTargetError("input target '" + action.target.value_or("") +
                                                "' not found in state " + state.state_id);
                }
                action.text = generate_input_text(*widget, spec, path, gateway);
            }
            Transition transition;
            transition.action = action;
            transition.before = device.capture_screen();
            transition.action_rendered = render_action(action, transition.before);
            StepResult result = device.execute(action);
            transition.crashed = result.crashed;
            if (result.crashed) {
                transition.crash_record = result.crash_record;
            } else {
                transition.after = result.new_state;
            }
            if (options.summarize) {
                transition.summary =
                    summarize_transition(action, transition.before, transition.after,
                                         transition.crashed, transition.crash_record, gateway);
            } else {
                transition.summary = transition.action_rendered;
            }
            transitions.push_back(std::move(transition));
            device.rollback(origin);
        }
    } catch (...) {
        device.rollback(origin);
        throw;
    }
    return transitions;
}

} // namespace uirepro
