#pragma once

#include "uirepro/ui/widget.hpp"

#include <string>

namespace uirepro {

// Stable identity of a UI state: a 64-bit FNV-1a hash (16 hex digits) over
// the activity name and the canonical serialization of the widget hierarchy.
// Deliberately ignores state_id and visual_descriptor so that re-captures of
// an unchanged screen fingerprint identically.
std::string state_fingerprint(const UIState& state);

} // namespace uirepro
