#pragma once

#include "uirepro/ui/widget.hpp"

#include <string>
#include <string_view>

namespace uirepro {

// Parses a view-hierarchy XML dump into a widget tree.
//
// Recognised attributes per element: class, text, content-desc, resource-id,
// bounds="[l,t][r,b]", clickable, long-clickable, editable, scrollable,
// enabled, visible. Flags must be "true" or "false"; absent flags default to
// false except enabled/visible which default to true. Unknown attributes are
// ignored. The widget class is the `class` attribute when present, otherwise
// the element name. Node ids are assigned in pre-order: "n0", "n1", ...
//
// Throws EmptyDocumentError for an empty document and MalformedXmlError for
// syntax errors, non-boolean flags, or bounds with negative extent.
WidgetTree parse_view_hierarchy(std::string_view xml);

// Inverse of parse_view_hierarchy over the attribute subset Widget carries:
// emits `node` elements with class/text/content-desc/resource-id/bounds and
// any non-default flags, so parse(serialize(tree)) reproduces the tree
// (node ids are positional and therefore survive the round trip).
std::string serialize_view_hierarchy(const WidgetTree& tree);

} // namespace uirepro
