#pragma once

#include "uirepro/explore/path.hpp"
#include "uirepro/llm/gateway.hpp"
#include "uirepro/report/analyzer.hpp"
#include "uirepro/sim/device.hpp"

#include <optional>
#include <vector>

namespace uirepro {

// How many trailing steps of a path are rendered into prompts.
constexpr size_t kPathRenderTail = 20;

struct FilterOutcome {
    // Retained actions, always a subset of the input in input order and
    // never empty (an empty or unusable selection falls back to keeping
    // everything).
    std::vector<UIAction> kept;
    // Indices (into the input vector) of the retained actions.
    std::vector<size_t> kept_indices;
    // The model's top-ranked choice: first valid index in reply order.
    size_t top_index = 0;
    bool fell_back = false;
};

// Asks ActionFilter which of `actions` are worth probing from `state` given
// the specification and the path so far. GatewayError propagates; a reply
// that cannot be parsed (or selects nothing valid) keeps the full set.
FilterOutcome filter_actions_detailed(const std::vector<UIAction>& actions, const UIState& state,
                                      const ReproductionSpecification& spec,
                                      const ExplorationPath& path, LlmGateway& gateway);

std::vector<UIAction> filter_actions(const std::vector<UIAction>& actions, const UIState& state,
                                     const ReproductionSpecification& spec,
                                     const ExplorationPath& path, LlmGateway& gateway);

// Asks InputTextGen what to type into `widget`. Any failure — gateway error
// or an empty reply — falls back to "test". Never throws.
std::string generate_input_text(const Widget& widget, const ReproductionSpecification& spec,
                                const ExplorationPath& path, LlmGateway& gateway);

// One-sentence description of an executed action's effect. Crashing actions
// are summarized deterministically (embedding the crash record) without a
// model call; an empty model reply falls back to the rendered action.
std::string summarize_transition(const UIAction& action, const UIState& before,
                                 const std::optional<UIState>& after, bool crashed,
                                 const std::optional<std::string>& crash_record,
                                 LlmGateway& gateway);

struct PreExploreOptions {
    // When false (summarization disabled) summaries are the rendered actions.
    bool summarize = true;
};

// Probes every retained action from the current screen: snapshot once, then
// per action capture -> execute -> observe -> summarize -> rollback. Returns
// one Transition per retained action, in order; the device is back at the
// starting state when this returns (also on exceptions).
std::vector<Transition> pre_explore(const UIState& state, const ReproductionSpecification& spec,
                                    const ExplorationPath& path, Device& device,
                                    LlmGateway& gateway, const PreExploreOptions& options = {});

} // namespace uirepro
