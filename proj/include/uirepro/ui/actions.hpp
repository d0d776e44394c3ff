#pragma once

#include "uirepro/ui/widget.hpp"

#include <optional>
#include <string>
#include <vector>

namespace uirepro {

enum class ActionKind { Click, LongClick, Swipe, InputText, Rotate, Press };

enum class SwipeDirection { Up, Down, Left, Right };

enum class PressKey { Back, Enter, Delete, Home };

// One executable UI action. `target` holds the node id of the widget the
// action operates on; Rotate, Press and screen-level Swipe carry no target.
// InputText actions are derived with an empty `text` and filled in later.
struct UIAction {
    ActionKind kind = ActionKind::Click;
    std::optional<std::string> target;
    std::optional<std::string> text;           // InputText payload
    std::optional<SwipeDirection> direction;   // Swipe only
    std::optional<PressKey> key;               // Press only

    bool operator==(const UIAction&) const = default;

    static UIAction click(std::string node_id);
    static UIAction long_click(std::string node_id);
    static UIAction input_text(std::string node_id, std::string text = "");
    static UIAction swipe(SwipeDirection direction,
                          std::optional<std::string> node_id = std::nullopt);
    static UIAction rotate();
    static UIAction press(PressKey key);
};

const char* to_string(ActionKind kind);
const char* to_string(SwipeDirection direction);
const char* to_string(PressKey key);

// Enumerates every action available in `state`, deterministically:
// for each widget in pre-order, Click if clickable, LongClick if
// long-clickable, InputText if editable, then Swipe up/down/left/right if
// scrollable — all gated on the widget being enabled and visible — followed
// by the screen-level actions: Swipe up/down/left/right (only when some
// widget is scrollable), Rotate, and Press Back/Enter/Delete/Home.
std::vector<UIAction> derive_actions(const UIState& state);

} // namespace uirepro
