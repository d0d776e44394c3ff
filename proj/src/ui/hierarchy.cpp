#include "uirepro/ui/hierarchy.hpp"

#include "uirepro/errors.hpp"
#include "uirepro/ui/xml.hpp"

#include <cctype>
#include <charconv>

namespace uirepro {

namespace {

bool parse_flag(const XmlElement& element, std::string_view key, bool fallback) {
    const std::string* raw = element.find_attribute(key);
    if (raw == nullptr) {
        return fallback;
    }
    if (*raw == "true") {
        return true;
    }
    if (*raw == "false") {
        return false;
    }
    throw MalformedXmlError("attribute '" + std::string(key) + "' must be \"true\" or \"false\", got \"" +
                            *raw + "\"");
}

// bounds="[l,t][r,b]"
Bounds parse_bounds(const std::string& raw) {
    Bounds bounds;
    const char* cursor = raw.data();
    const char* end = raw.data() + raw.size();
    auto take = [&](char expected) {
        if (cursor == end || *cursor != expected) {
            throw MalformedXmlError("invalid bounds \"" + raw + "\"");
        }
        ++cursor;
    };
    auto number = [&](int& out) {
        auto [next, ec] = std::from_chars(cursor, end, out);
        if (ec != std::errc()) {
            throw MalformedXmlError("invalid bounds \"" + raw + "\"");
        }
        cursor = next;
    };
    take('[');
    number(bounds.left);
    take(',');
    number(bounds.top);
    take(']');
    take('[');
    number(bounds.right);
    take(',');
    number(bounds.bottom);
    take(']');
    if (cursor != end) {
        throw MalformedXmlError("invalid bounds \"" + raw + "\"");
    }
    if (bounds.right < bounds.left || bounds.bottom < bounds.top) {
        throw MalformedXmlError("bounds \"" + raw + "\" have negative extent");
    }
    return bounds;
}

Widget convert(const XmlElement& element, int& next_id) {
    Widget widget;
    widget.node_id = "n" + std::to_string(next_id++);
    const std::string* class_attr = element.find_attribute("class");
    widget.class_name = class_attr != nullptr ? *class_attr : element.name;
    if (const std::string* text = element.find_attribute("text")) {
        widget.text = *text;
    }
    if (const std::string* desc = element.find_attribute("content-desc")) {
        widget.content_desc = *desc;
    }
    if (const std::string* rid = element.find_attribute("resource-id")) {
        widget.resource_id = *rid;
    }
    if (const std::string* bounds = element.find_attribute("bounds")) {
        widget.bounds = parse_bounds(*bounds);
    }
    widget.flags.clickable = parse_flag(element, "clickable", false);
    widget.flags.long_clickable = parse_flag(element, "long-clickable", false);
    widget.flags.editable = parse_flag(element, "editable", false);
    widget.flags.scrollable = parse_flag(element, "scrollable", false);
    widget.flags.enabled = parse_flag(element, "enabled", true);
    widget.flags.visible = parse_flag(element, "visible", true);
    widget.children.reserve(element.children.size());
    for (const XmlElement& child : element.children) {
        widget.children.push_back(convert(child, next_id));
    }
    return widget;
}

void serialize(const Widget& widget, std::string& out, int depth) {
    out.append(static_cast<size_t>(depth) * 2, ' ');
    out += "<node class=\"" + xml_escape(widget.class_name) + "\"";
    if (widget.text) {
        out += " text=\"" + xml_escape(*widget.text) + "\"";
    }
    if (widget.content_desc) {
        out += " content-desc=\"" + xml_escape(*widget.content_desc) + "\"";
    }
    if (widget.resource_id) {
        out += " resource-id=\"" + xml_escape(*widget.resource_id) + "\"";
    }
    if (widget.bounds != Bounds{}) {
        out += " bounds=\"[" + std::to_string(widget.bounds.left) + "," +
               std::to_string(widget.bounds.top) + "][" + std::to_string(widget.bounds.right) +
               "," + std::to_string(widget.bounds.bottom) + "]\"";
    }
    if (widget.flags.clickable) {
        out += " clickable=\"true\"";
    }
    if (widget.flags.long_clickable) {
        out += " long-clickable=\"true\"";
    }
    if (widget.flags.editable) {
        out += " editable=\"true\"";
    }
    if (widget.flags.scrollable) {
        out += " scrollable=\"true\"";
    }
    if (!widget.flags.enabled) {
        out += " enabled=\"false\"";
    }
    if (!widget.flags.visible) {
        out += " visible=\"false\"";
    }
    if (widget.children.empty()) {
        out += "/>\n";
        return;
    }
    out += ">\n";
    for (const Widget& child : widget.children) {
        serialize(child, out, depth + 1);
    }
    out.append(static_cast<size_t>(depth) * 2, ' ');
    out += "</node>\n";
}

void collect(const Widget& widget, std::vector<const Widget*>& out) {
    out.push_back(&widget);
    for (const Widget& child : widget.children) {
        collect(child, out);
    }
}

} // namespace

WidgetTree parse_view_hierarchy(std::string_view xml) {
    XmlElement root = parse_xml(xml);
    WidgetTree tree;
    int next_id = 0;
    tree.root = convert(root, next_id);
    tree.widget_count = next_id;
    return tree;
}

std::string serialize_view_hierarchy(const WidgetTree& tree) {
    std::string out;
    serialize(tree.root, out, 0);
    return out;
}

const Widget* find_widget(const WidgetTree& tree, const std::string& node_id) {
    for (const Widget* widget : all_widgets(tree)) {
        if (widget->node_id == node_id) {
            return widget;
        }
    }
    return nullptr;
}

std::vector<const Widget*> all_widgets(const WidgetTree& tree) {
    std::vector<const Widget*> out;
    out.reserve(static_cast<size_t>(tree.widget_count));
    collect(tree.root, out);
    return out;
}

} // namespace uirepro
