#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace uirepro {

// Screen-space rectangle in the Android dump convention: [left,top][right,bottom].
struct Bounds {
    int left = 0;
    int top = 0;
    int right = 0;
    int bottom = 0;

    bool operator==(const Bounds&) const = default;
};

// Interaction capability flags. A dump that omits a flag means "false",
// except enabled/visible which default to true.
struct WidgetFlags {
    bool clickable = false;
    bool long_clickable = false;
    bool editable = false;
    bool scrollable = false;
    bool enabled = true;
    bool visible = true;

    bool operator==(const WidgetFlags&) const = default;
};

// One node of a parsed view hierarchy. `node_id` addresses the widget within
// its tree ("n0", "n1", ... in pre-order) and is what actions carry as target.
struct Widget {
    std::string node_id;
    std::string class_name;
    std::optional<std::string> text;
    std::optional<std::string> content_desc;
    std::optional<std::string> resource_id;
    Bounds bounds;
    WidgetFlags flags;
    std::vector<Widget> children;

    bool operator==(const Widget&) const = default;
};

struct WidgetTree {
    Widget root;
    int widget_count = 0;
};

// One observation of the app UI. The hierarchy is shared because captures of
// the same screen are frequent and the tree is immutable once parsed.
struct UIState {
    std::string state_id;
    std::string activity_name;
    std::shared_ptr<const WidgetTree> hierarchy;
    std::string visual_descriptor;
};

// Depth-first search for a node id; nullptr when absent.
const Widget* find_widget(const WidgetTree& tree, const std::string& node_id);

// Pre-order listing of every widget in the tree.
std::vector<const Widget*> all_widgets(const WidgetTree& tree);

} // namespace uirepro
