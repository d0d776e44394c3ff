#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uirepro {

// Minimal XML element tree, just rich enough for UI hierarchy dumps:
// one root element, nested elements, quoted attributes, comments, an
// optional declaration, CDATA/text (ignored) and the five named entities
// plus numeric character references. Attribute order is preserved.
struct XmlElement {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<XmlElement> children;

    // First value for `key`, or nullptr when the attribute is absent.
    const std::string* find_attribute(std::string_view key) const;
};

// Parses a document into its root element.
// Throws EmptyDocumentError when no root element is present and
// MalformedXmlError (with a byte offset in the message) on syntax errors.
XmlElement parse_xml(std::string_view text);

// Escapes &, <, >, " and ' for use in attribute values or text.
std::string xml_escape(std::string_view raw);

} // namespace uirepro
