#pragma once

#include "uirepro/sim/app_model.hpp"

#include <optional>
#include <vector>

namespace uirepro {

// Breadth-first search for a shortest action sequence (from reset) that
// manifests `bug_id` in the app model, independent of the reproduction
// engine: it enumerates derived actions directly against the simulator's
// transition function, deduplicating visited configurations. InputText
// payloads are drawn from the literal `input_pattern` strings of the current
// state's rules plus "test". Crash bugs count as reached when the crash
// fires; non-crash bugs when their trigger state is current (depth 0 included).
// Returns nullopt when the bug is unreachable within `max_depth` actions;
// throws Error for an unknown bug id.
std::optional<std::vector<UIAction>> brute_force_oracle(const SimApp& app,
                                                        const std::string& bug_id,
                                                        size_t max_depth);

} // namespace uirepro
