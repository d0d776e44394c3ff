#pragma once

#include "uirepro/llm/gateway.hpp"
#include "uirepro/report/bug_report.hpp"
#include "uirepro/sim/device.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace uirepro {

// Feature switches for ablated runs; true disables the stage.
struct Ablations {
    bool report_analysis = false;    // work from the raw report text
    bool action_exploration = false; // commit to the top-ranked action, no probing
    bool transition_summary = false; // summaries are the rendered actions
    bool bug_verification = false;   // accept candidates without verification
};

struct SessionConfig {
    int max_actions = 100;
    double max_minutes = 60.0;
    int beam = 3;
    Ablations disable;
    // Carried for callers that construct the gateway/device from one config
    // object (the CLI does); reproduce() itself reads neither.
    PriceTable price_table;
    std::string id_seed;
    // How many reposition snapshots to keep alive (least recently used wins).
    int snapshot_cap = 8;
};

enum class SessionOutcome {
    Success,
    BudgetExceededActions,
    BudgetExceededTime,
    Exhausted,
    Error,
};

// Canonical lower-snake name used in outcome files and CSV ("success", ...).
const char* to_string(SessionOutcome outcome);

struct SessionMetrics {
    SessionOutcome outcome = SessionOutcome::Error;
    int64_t executed_actions = 0;
    LedgerSnapshot ledger; // this session's gateway usage only
    double wall_seconds = 0.0;
    std::string error_message; // Error outcome only
};

struct ReproductionResult {
    SessionMetrics metrics;
    // Populated on Success: the confirmed action sequence (with input text
    // payloads filled in) and the per-step summaries.
    std::vector<UIAction> trace;
    std::vector<std::string> trace_summaries;
};

// Runs one full reproduction session: distill the report, then explore the
// UI breadth-first — probe actions, summarize transitions, evaluate paths at
// beam width, verify candidates — until the bug is confirmed, the frontier
// empties, or a budget runs out. Never throws: device/gateway failures
// surface as outcome Error with partial metrics.
ReproductionResult reproduce(const BugReport& report, Device& device, LlmGateway& gateway,
                             const SessionConfig& config);

} // namespace uirepro
