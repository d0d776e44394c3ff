#include "uirepro/ui/render.hpp"

#include "uirepro/errors.hpp"
#include "uirepro/ui/xml.hpp"

#include <map>

namespace uirepro {

namespace {

std::string strip_package(const std::string& class_name) {
    size_t dot = class_name.rfind('.');
    return dot == std::string::npos ? class_name : class_name.substr(dot + 1);
}

const Widget& resolve_target(const UIAction& action, const UIState& state) {
    if (!action.target) {
        throw UnresolvedTargetError("action has no target widget");
    }
    if (state.hierarchy) {
        if (const Widget* widget = find_widget(*state.hierarchy, *action.target)) {
            return *widget;
        }
    }
    throw UnresolvedTargetError("no widget with id '" + *action.target + "' in state " +
                                state.state_id);
}

} // namespace

std::string render_widget(const Widget& widget) {
    std::string out = "<" + strip_package(widget.class_name);
    if (widget.text && !widget.text->empty()) {
        out += " android:text=\"" + xml_escape(*widget.text) + "\"";
    }
    if (widget.content_desc && !widget.content_desc->empty()) {
        out += " android:content-desc=\"" + xml_escape(*widget.content_desc) + "\"";
    }
    if (widget.resource_id && !widget.resource_id->empty()) {
        out += " android:resource-id=\"" + xml_escape(*widget.resource_id) + "\"";
    }
    out += "/>";
    return out;
}

std::string render_action(const UIAction& action, const UIState& state) {
    switch (action.kind) {
    case ActionKind::Click:
        return "click widget " + render_widget(resolve_target(action, state));
    case ActionKind::LongClick:
        return "long-click widget " + render_widget(resolve_target(action, state));
    case ActionKind::InputText: {
        const Widget& widget = resolve_target(action, state);
        if (action.text && !action.text->empty()) {
            return "input \"" + *action.text + "\" in widget " + render_widget(widget);
        }
        return "input text in widget " + render_widget(widget);
    }
    case ActionKind::Swipe: {
        std::string direction = to_string(action.direction.value_or(SwipeDirection::Up));
        if (action.target) {
            return "swipe " + direction + " in widget " + render_widget(resolve_target(action, state));
        }
        return "swipe " + direction + " on the screen";
    }
    case ActionKind::Rotate:
        return "rotate the screen";
    case ActionKind::Press:
        return std::string("press the ") + to_string(action.key.value_or(PressKey::Back)) + " key";
    }
    throw Error("unknown action kind");
}

std::string action_tag(const UIAction& action) {
    switch (action.kind) {
    case ActionKind::Click: return "Click";
    case ActionKind::LongClick: return "LongClick";
    case ActionKind::InputText: return "InputText";
    case ActionKind::Swipe:
        return std::string("Swipe(") + to_string(action.direction.value_or(SwipeDirection::Up)) + ")";
    case ActionKind::Rotate: return "Rotate";
    case ActionKind::Press:
        return std::string("Press(") + to_string(action.key.value_or(PressKey::Back)) + ")";
    }
    return "?";
}

std::string render_widget_list(const UIState& state, const std::vector<UIAction>& actions) {
    // Group action indices by target, keeping first-appearance order.
    std::vector<std::pair<std::string, std::vector<size_t>>> groups;
    std::map<std::string, size_t> group_index;
    std::vector<size_t> screen_actions;
    for (size_t i = 0; i < actions.size(); ++i) {
        const UIAction& action = actions[i];
        if (!action.target) {
            screen_actions.push_back(i);
            continue;
        }
        auto [it, inserted] = group_index.try_emplace(*action.target, groups.size());
        if (inserted) {
            groups.push_back({*action.target, {}});
        }
        groups[it->second].second.push_back(i);
    }

    std::string out;
    auto append_tags = [&](const std::vector<size_t>& indices) {
        for (size_t k = 0; k < indices.size(); ++k) {
            if (k > 0) {
                out += ", ";
            }
            out += "[" + std::to_string(indices[k]) + "] " + action_tag(actions[indices[k]]);
        }
    };
    for (const auto& [node_id, indices] : groups) {
        const Widget* widget =
            state.hierarchy ? find_widget(*state.hierarchy, node_id) : nullptr;
        if (widget == nullptr) {
            throw UnresolvedTargetError("no widget with id '" + node_id + "' in state " +
                                        state.state_id);
        }
        out += render_widget(*widget) + " : ";
        append_tags(indices);
        out += "\n";
    }
    if (!screen_actions.empty()) {
        out += "(the screen) : ";
        append_tags(screen_actions);
        out += "\n";
    }
    return out;
}

std::string render_state_summary(const UIState& state) {
    std::string out = "activity=" + state.activity_name + " | visual=" + state.visual_descriptor +
                      " | widgets: ";
    bool any = false;
    if (state.hierarchy) {
        for (const Widget* widget : all_widgets(*state.hierarchy)) {
            bool identifying = (widget->text && !widget->text->empty()) ||
                               (widget->content_desc && !widget->content_desc->empty()) ||
                               (widget->resource_id && !widget->resource_id->empty());
            if (!identifying) {
                continue;
            }
            if (any) {
                out += "; ";
            }
            out += render_widget(*widget);
            any = true;
        }
    }
    if (!any) {
        out += "(none)";
    }
    return out;
}

} // namespace uirepro
