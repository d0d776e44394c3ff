#include "uirepro/ui/fingerprint.hpp"

#include "uirepro/ui/hierarchy.hpp"

#include <cstdint>

namespace uirepro {

namespace {

constexpr uint64_t kFnvOffset = 1469598103934665603ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

void fnv_mix(uint64_t& hash, std::string_view bytes) {
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= kFnvPrime;
    }
}

} // namespace

std::string state_fingerprint(const UIState& state) {
    uint64_t hash = kFnvOffset;
    fnv_mix(hash, state.activity_name);
    fnv_mix(hash, std::string_view("\0", 1));
    if (state.hierarchy) {
        fnv_mix(hash, serialize_view_hierarchy(*state.hierarchy));
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

} // namespace uirepro
