#pragma once

#include "uirepro/llm/roles.hpp"

#include <array>
#include <cstdint>
#include <mutex>

namespace uirepro {

// Prices in integer micro-dollars per 1000 tokens, so cost accounting stays
// exact: cost(tokens) = tokens * price is in nano-dollars with no rounding.
// parse_price_table accepts the conventional dollars-per-1K decimal form
// (up to 6 decimal places).
struct PriceTable {
    int64_t prompt_micro_per_1k = 0;
    int64_t completion_micro_per_1k = 0;

    bool operator==(const PriceTable&) const = default;
};

struct RoleUsage {
    int64_t calls = 0;
    int64_t prompt_tokens = 0;
    int64_t completion_tokens = 0;
};

constexpr int kPromptRoleCount = 6;

// Immutable view of ledger totals. Snapshots subtract, so a caller holding a
// "before" snapshot can compute the usage of just its own span of work.
struct LedgerSnapshot {
    std::array<RoleUsage, kPromptRoleCount> per_role{};
    int64_t calls = 0;
    int64_t prompt_tokens = 0;
    int64_t completion_tokens = 0;
    int64_t cost_nano_dollars = 0;

    int64_t total_tokens() const { return prompt_tokens + completion_tokens; }

    LedgerSnapshot operator-(const LedgerSnapshot& earlier) const;
};

// Nano-dollars -> fixed 9-decimal dollar string, e.g. 1200000 -> "0.001200000".
std::string format_nano_dollars(int64_t nano);

// Builds a price table from dollars-per-1K-token rates (e.g. 0.002, 0.008).
// Rates finer than a micro-dollar per 1K are rejected rather than rounded.
PriceTable make_price_table(double prompt_per_1k, double completion_per_1k);

// Reads {"prompt_per_1k": <number>, "completion_per_1k": <number>} from a
// JSON file. Throws UnreadableFileError / SchemaViolationError.
PriceTable load_price_table(const std::string& path);

// Running token/cost account for one gateway. Internally synchronized;
// concurrent recorders never lose updates.
class UsageLedger {
public:
    explicit UsageLedger(PriceTable prices = {}) : prices_(prices) {}

    void record(PromptRole role, int64_t prompt_tokens, int64_t completion_tokens);
    LedgerSnapshot snapshot() const;
    PriceTable prices() const { return prices_; }

private:
    mutable std::mutex mutex_;
    PriceTable prices_;
    std::array<RoleUsage, kPromptRoleCount> per_role_{};
};

} // namespace uirepro
