#include "uirepro/run/metrics.hpp"

#include "uirepro/errors.hpp"

#include <cstdio>

namespace uirepro {

using nlohmann::json;

const char* const kCsvHeader = "report_id,outcome,actions,tokens_k,cost,minutes";
const char* const kCsvHeaderVariant = "report_id,outcome,actions,tokens_k,cost,minutes,variant";

double compute_sr(const std::vector<bool>& confirmed) {
    if (confirmed.empty()) {
        throw EmptyInputError("cannot compute a success rate over zero sessions");
    }
    size_t successes = 0;
    for (bool outcome : confirmed) {
        if (outcome) {
            ++successes;
        }
    }
    return static_cast<double>(successes) / static_cast<double>(confirmed.size());
}

namespace {

std::string lower(const char* text) {
    std::string out = text;
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return out;
}

const char* kind_name(ActionKind kind) {
    switch (kind) {
    case ActionKind::Click: return "click";
    case ActionKind::LongClick: return "long_click";
    case ActionKind::Swipe: return "swipe";
    case ActionKind::InputText: return "input_text";
    case ActionKind::Rotate: return "rotate";
    case ActionKind::Press: return "press";
    }
    return "?";
}

std::string fixed3(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.3f", value);
    return buffer;
}

} // namespace

json action_to_json(const UIAction& action) {
    json out = {{"kind", kind_name(action.kind)}};
    if (action.target) {
        out["target"] = *action.target;
    }
    if (action.kind == ActionKind::InputText) {
        out["text"] = action.text.value_or("");
    }
    if (action.kind == ActionKind::Swipe) {
        out["direction"] = to_string(action.direction.value_or(SwipeDirection::Up));
    }
    if (action.kind == ActionKind::Press) {
        out["key"] = lower(to_string(action.key.value_or(PressKey::Back)));
    }
    return out;
}

json result_to_json(const ReproductionResult& result, bool normalize) {
    const SessionMetrics& metrics = result.metrics;
    json doc;
    doc["outcome"] = to_string(metrics.outcome);
    doc["metrics"] = {
        {"executed_actions", metrics.executed_actions},
        {"prompt_tokens", metrics.ledger.prompt_tokens},
        {"completion_tokens", metrics.ledger.completion_tokens},
        {"llm_calls", metrics.ledger.calls},
        {"cost_usd", format_nano_dollars(metrics.ledger.cost_nano_dollars)},
        {"wall_seconds", normalize ? 0.0 : metrics.wall_seconds},
    };
    doc["trace"] = json::array();
    for (const UIAction& action : result.trace) {
        doc["trace"].push_back(action_to_json(action));
    }
    doc["trace_summaries"] = result.trace_summaries;
    if (metrics.outcome == SessionOutcome::Error) {
        doc["error"] = metrics.error_message;
    }
    return doc;
}

std::string csv_row(const std::string& report_id, const SessionMetrics& metrics, bool normalize,
                    const std::string& variant) {
    std::string row = report_id;
    row += ",";
    row += to_string(metrics.outcome);
    row += ",";
    row += std::to_string(metrics.executed_actions);
    row += ",";
    row += fixed3(static_cast<double>(metrics.ledger.total_tokens()) / 1000.0);
    row += ",";
    row += format_nano_dollars(metrics.ledger.cost_nano_dollars);
    row += ",";
    row += fixed3(normalize ? 0.0 : metrics.wall_seconds / 60.0);
    if (!variant.empty()) {
        row += ",";
        row += variant;
    }
    return row;
}

std::string csv_sr_line(double sr) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "SR,%.4f", sr);
    return buffer;
}

} // namespace uirepro
