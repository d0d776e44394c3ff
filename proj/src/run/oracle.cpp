#include "uirepro/run/oracle.hpp"

#include "uirepro/errors.hpp"
#include "uirepro/ui/actions.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

namespace uirepro {

namespace {

std::string visited_key(const SimConfig& config) {
    std::string key = config.state_key;
    for (const auto& [var, value] : config.vars) {
        key += '\x1f';
        key += var;
        key += '\x1e';
        key += value;
    }
    return key;
}

// Candidate payloads for typing into the current state: each input_pattern
// literal of an InputText rule leaving this state, then "test".
std::vector<std::string> input_candidates(const SimApp& app, const std::string& state_key) {
    std::vector<std::string> candidates;
    for (const SimRule& rule : app.rules) {
        if (rule.from != state_key || rule.on.kind != ActionKind::InputText ||
            !rule.on.input_pattern) {
            continue;
        }
        if (std::find(candidates.begin(), candidates.end(), *rule.on.input_pattern) ==
            candidates.end()) {
            candidates.push_back(*rule.on.input_pattern);
        }
    }
    if (std::find(candidates.begin(), candidates.end(), "test") == candidates.end()) {
        candidates.push_back("test");
    }
    return candidates;
}

} // namespace

std::optional<std::vector<UIAction>> brute_force_oracle(const SimApp& app,
                                                        const std::string& bug_id,
                                                        size_t max_depth) {
    const SimBug* bug = app.find_bug(bug_id);
    if (bug == nullptr) {
        throw Error("app '" + app.app_name + "' declares no bug '" + bug_id + "'");
    }

    SimConfig start;
    start.state_key = app.initial_state;
    if (bug->kind == BugKind::NonCrash && start.state_key == bug->trigger) {
        return std::vector<UIAction>{}; // the faulty screen is the first screen
    }

    struct Node {
        SimConfig config;
        std::vector<UIAction> actions;
    };
    std::deque<Node> queue;
    std::set<std::string> visited;
    queue.push_back({start, {}});
    visited.insert(visited_key(start));

    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        if (node.actions.size() >= max_depth) {
            continue; // children would exceed the depth budget
        }

        const SimState& screen = app.state(node.config.state_key);
        UIState state;
        state.state_id = "oracle";
        state.activity_name = screen.activity;
        state.hierarchy = screen.hierarchy;
        state.visual_descriptor = screen.visual;

        for (const UIAction& derived : derive_actions(state)) {
            std::vector<UIAction> variants;
            if (derived.kind == ActionKind::InputText) {
                for (const std::string& payload : input_candidates(app, node.config.state_key)) {
                    UIAction filled = derived;
                    filled.text = payload;
                    variants.push_back(std::move(filled));
                }
            } else {
                variants.push_back(derived);
            }
            for (const UIAction& action : variants) {
                SimConfig next = node.config;
                SimStepOutcome outcome = sim_step(app, next, action);
                std::vector<UIAction> actions = node.actions;
                actions.push_back(action);
                if (outcome.crashed) {
                    if (bug->kind == BugKind::Crash && outcome.new_state_key == bug->trigger) {
                        return actions;
                    }
                    continue; // some other bug crashed the app: dead end
                }
                if (bug->kind == BugKind::NonCrash && outcome.new_state_key == bug->trigger) {
                    return actions;
                }
                if (visited.insert(visited_key(next)).second) {
                    queue.push_back({std::move(next), std::move(actions)});
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace uirepro
