#include "uirepro/ui/actions.hpp"

namespace uirepro {

UIAction UIAction::click(std::string node_id) {
    UIAction action;
    action.kind = ActionKind::Click;
    action.target = std::move(node_id);
    return action;
}

UIAction UIAction::long_click(std::string node_id) {
    UIAction action;
    action.kind = ActionKind::LongClick;
    action.target = std::move(node_id);
    return action;
}

UIAction UIAction::input_text(std::string node_id, std::string text) {
    UIAction action;
    action.kind = ActionKind::InputText;
    action.target = std::move(node_id);
    action.text = std::move(text);
    return action;
}

UIAction UIAction::swipe(SwipeDirection direction, std::optional<std::string> node_id) {
    UIAction action;
    action.kind = ActionKind::Swipe;
    action.direction = direction;
    action.target = std::move(node_id);
    return action;
}

UIAction UIAction::rotate() {
    UIAction action;
    action.kind = ActionKind::Rotate;
    return action;
}

UIAction UIAction::press(PressKey key) {
    UIAction action;
    action.kind = ActionKind::Press;
    action.key = key;
    return action;
}

const char* to_string(ActionKind kind) {
    switch (kind) {
    case ActionKind::Click: return "Click";
    case ActionKind::LongClick: return "LongClick";
    case ActionKind::Swipe: return "Swipe";
    case ActionKind::InputText: return "InputText";
    case ActionKind::Rotate: return "Rotate";
    case ActionKind::Press: return "Press";
    }
    return "?";
}

const char* to_string(SwipeDirection direction) {
    switch (direction) {
    case SwipeDirection::Up: return "up";
    case SwipeDirection::Down: return "down";
    case SwipeDirection::Left: return "left";
    case SwipeDirection::Right: return "right";
    }
    return "?";
}

const char* to_string(PressKey key) {
    switch (key) {
    case PressKey::Back: return "Back";
    case PressKey::Enter: return "Enter";
    case PressKey::Delete: return "Delete";
    case PressKey::Home: return "Home";
    }
    return "?";
}

namespace {

constexpr SwipeDirection kSwipeOrder[] = {SwipeDirection::Up, SwipeDirection::Down,
                                          SwipeDirection::Left, SwipeDirection::Right};

} // namespace

std::vector<UIAction> derive_actions(const UIState& state) {
    std::vector<UIAction> actions;
    bool any_scrollable = false;
    if (state.hierarchy) {
        for (const Widget* widget : all_widgets(*state.hierarchy)) {
            if (!widget->flags.enabled || !widget->flags.visible) {
                continue;
            }
            if (widget->flags.clickable) {
                actions.push_back(UIAction::click(widget->node_id));
            }
            if (widget->flags.long_clickable) {
                actions.push_back(UIAction::long_click(widget->node_id));
            }
            if (widget->flags.editable) {
                actions.push_back(UIAction::input_text(widget->node_id));
            }
            if (widget->flags.scrollable) {
                any_scrollable = true;
                for (SwipeDirection direction : kSwipeOrder) {
                    actions.push_back(UIAction::swipe(direction, widget->node_id));
                }
            }
        }
    }
    if (any_scrollable) {
        for (SwipeDirection direction : kSwipeOrder) {
            actions.push_back(UIAction::swipe(direction));
        }
    }
    actions.push_back(UIAction::rotate());
    actions.push_back(UIAction::press(PressKey::Back));
    actions.push_back(UIAction::press(PressKey::Enter));
    actions.push_back(UIAction::press(PressKey::Delete));
    actions.push_back(UIAction::press(PressKey::Home));
    return actions;
}

} // namespace uirepro
