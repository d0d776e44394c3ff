#pragma once

#include "uirepro/evaluate/evaluator.hpp"
#include "uirepro/sim/device.hpp"

#include <optional>
#include <string>
#include <vector>

namespace uirepro {

// Re-runs a recorded trace from reset() and checks that the bug manifests:
// confirmed when a crash occurs during the replay, or — for non-crash bugs —
// when the final screen's visual descriptor contains `expected_symptom`.
// A step whose target no longer resolves fails the replay, citing the step.
VerificationResult replay(const std::vector<UIAction>& trace, Device& device,
                          const std::optional<std::string>& expected_symptom = std::nullopt);

} // namespace uirepro
