#pragma once

#include "uirepro/explore/path.hpp"
#include "uirepro/llm/gateway.hpp"
#include "uirepro/report/analyzer.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uirepro {

enum class PathDecision { Continue, Prune, CandidateSuccess };

const char* to_string(PathDecision decision);

struct PathVerdict {
    uint64_t path_id = 0;
    PathDecision decision = PathDecision::Prune;
    std::string rationale;
};

struct VerificationResult {
    bool confirmed = false;
    std::string evidence;
};

// Asks PathEvaluation to triage the candidate paths; returns one verdict per
// path, aligned with the input. Guarantees layered on the model's reply:
//   - a crashed path is promoted to CandidateSuccess when a crash is
//     expected, and never marked Continue (there is no screen to act from);
//   - at most `beam` paths are marked Continue (best-ranked first, ties by
//     lower path_id); the rest are demoted to Prune;
//   - an unusable reply (after re-asks) falls back to continuing the `beam`
//     longest paths rather than aborting the session.
std::vector<PathVerdict> evaluate_paths(const std::vector<ExplorationPath>& paths,
                                        const ReproductionSpecification& spec,
                                        LlmGateway& gateway, int beam);

// Decides whether a candidate path actually reproduced the bug. When a crash
// is expected the device's crash log is the only accepted evidence and no
// model is consulted; otherwise BugVerification judges the final screen (a
// crashed path can never confirm a non-crash bug). Persistent malformed
// verification output counts as "not confirmed".
VerificationResult verify_bug(const ExplorationPath& path, const ReproductionSpecification& spec,
                              const std::optional<std::string>& device_crash_log,
                              LlmGateway& gateway);

} // namespace uirepro
