#include "uirepro/llm/ledger.hpp"

#include "uirepro/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace uirepro {

LedgerSnapshot LedgerSnapshot::operator-(const LedgerSnapshot& earlier) const {
    LedgerSnapshot out = *this;
    for (int i = 0; i < kPromptRoleCount; ++i) {
        out.per_role[static_cast<size_t>(i)].calls -= earlier.per_role[static_cast<size_t>(i)].calls;
        out.per_role[static_cast<size_t>(i)].prompt_tokens -=
            earlier.per_role[static_cast<size_t>(i)].prompt_tokens;
        out.per_role[static_cast<size_t>(i)].completion_tokens -=
            earlier.per_role[static_cast<size_t>(i)].completion_tokens;
    }
    out.calls -= earlier.calls;
    out.prompt_tokens -= earlier.prompt_tokens;
    out.completion_tokens -= earlier.completion_tokens;
    out.cost_nano_dollars -= earlier.cost_nano_dollars;
    return out;
}

std::string format_nano_dollars(int64_t nano) {
    bool negative = nano < 0;
    uint64_t magnitude = negative ? static_cast<uint64_t>(-(nano + 1)) + 1 : static_cast<uint64_t>(nano);
    uint64_t dollars = magnitude / 1000000000ull;
    uint64_t fraction = magnitude % 1000000000ull;
    std::string digits = std::to_string(fraction);
    digits.insert(0, 9 - digits.size(), '0');
    return (negative ? "-" : "") + std::to_string(dollars) + "." + digits;
}

namespace {

int64_t to_micro_per_1k(double per_1k, const char* field) {
    double scaled = per_1k * 1e6;
    double rounded = std::llround(scaled);
    if (!(per_1k >= 0) || std::abs(scaled - rounded) > 1e-6) {
        throw SchemaViolationError(std::string(field) +
                                   ": price must be a non-negative multiple of $0.000001 per 1K");
    }
    return static_cast<int64_t>(rounded);
}

} // namespace

PriceTable make_price_table(double prompt_per_1k, double completion_per_1k) {
    PriceTable table;
    table.prompt_micro_per_1k = to_micro_per_1k(prompt_per_1k, "prompt_per_1k");
    table.completion_micro_per_1k = to_micro_per_1k(completion_per_1k, "completion_per_1k");
    return table;
}

PriceTable load_price_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UnreadableFileError("cannot open price table file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaViolationError(path + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("prompt_per_1k") || !doc.contains("completion_per_1k") ||
        !doc.at("prompt_per_1k").is_number() || !doc.at("completion_per_1k").is_number()) {
        throw SchemaViolationError(path +
                                   ": expected {\"prompt_per_1k\": <number>, \"completion_per_1k\": <number>}");
    }
    return make_price_table(doc.at("prompt_per_1k").get<double>(),
                            doc.at("completion_per_1k").get<double>());
}

void UsageLedger::record(PromptRole role, int64_t prompt_tokens, int64_t completion_tokens) {
    if (prompt_tokens < 0 || completion_tokens < 0) {
        throw Error("token counts must be non-negative");
    }
    std::lock_guard<std::mutex> lock(mutex_);
    RoleUsage& usage = per_role_[static_cast<size_t>(role)];
    usage.calls += 1;
    usage.prompt_tokens += prompt_tokens;
    usage.completion_tokens += completion_tokens;
}

LedgerSnapshot UsageLedger::snapshot() const {
    std::lock_guard<std::mutex> lock(mutex_);
    LedgerSnapshot out;
    out.per_role = per_role_;
    for (const RoleUsage& usage : per_role_) {
        out.calls += usage.calls;
        out.prompt_tokens += usage.prompt_tokens;
        out.completion_tokens += usage.completion_tokens;
    }
    out.cost_nano_dollars =
        out.prompt_tokens * prices_.prompt_micro_per_1k + out.completion_tokens * prices_.completion_micro_per_1k;
    return out;
}

} // namespace uirepro
