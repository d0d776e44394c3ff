#pragma once

#include "uirepro/ui/actions.hpp"
#include "uirepro/ui/widget.hpp"

#include <string>
#include <vector>

namespace uirepro {

// Compact XML-like rendering of a widget for prompts, e.g.
//   <EditText android:text="Enter Name"/>
// Carries class name plus whichever of text, content-desc and resource-id are
// present and non-empty, in that order, with XML escaping.
std::string render_widget(const Widget& widget);

// Natural-language rendering of an action, e.g.
//   input "test2" in widget <EditText android:text="Enter Name"/>
//   swipe up on the screen
//   press the Back key
// Targets are resolved against `state`; throws UnresolvedTargetError when the
// target id is not present.
std::string render_action(const UIAction& action, const UIState& state);

// Short tag used in widget lists, e.g. "Click", "Swipe(up)", "Press(Back)".
std::string action_tag(const UIAction& action);

// One line per actionable widget (first-appearance order of `actions`, which
// keeps derive_actions ordering) listing that widget's actions with their
// indices into `actions`; screen-level actions are grouped on a final line.
// The indices are how filtering addresses actions. Example:
//   <TextView android:text="Alarms"/> : [0] Click
//   (the screen) : [2] Rotate, [3] Press(Back), ...
std::string render_widget_list(const UIState& state, const std::vector<UIAction>& actions);

// Single-line state description for prompts: activity, visual descriptor and
// the widgets that carry any identifying attribute.
std::string render_state_summary(const UIState& state);

} // namespace uirepro
