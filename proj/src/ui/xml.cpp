#include "uirepro/ui/xml.hpp"

#include "uirepro/errors.hpp"

#include <cctype>
#include <cstdint>

namespace uirepro {

const std::string* XmlElement::find_attribute(std::string_view key) const {
    for (const auto& [name, value] : attributes) {
        if (name == key) {
            return &value;
        }
    }
    return nullptr;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    XmlElement parse_document() {
        skip_misc();
        if (at_end()) {
            throw EmptyDocumentError("view hierarchy contains no root element");
        }
        if (peek() != '<') {
            fail("expected '<' at document root");
        }
        XmlElement root = parse_element();
        skip_misc();
        if (!at_end()) {
            fail("unexpected content after root element");
        }
        return root;
    }

private:
    std::string_view text_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw MalformedXmlError(what + " (at byte " + std::to_string(pos_) + ")");
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    bool starts_with(std::string_view prefix) const {
        return text_.compare(pos_, prefix.size(), prefix) == 0;
    }

    void expect(std::string_view token) {
        if (!starts_with(token)) {
            fail("expected '" + std::string(token) + "'");
        }
        pos_ += token.size();
    }

    void skip_whitespace() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
    }

    void skip_until(std::string_view terminator, const char* context) {
        size_t found = text_.find(terminator, pos_);
        if (found == std::string_view::npos) {
            fail(std::string("unterminated ") + context);
        }
        pos_ = found + terminator.size();
    }

    // Whitespace, comments, declarations and processing instructions.
    void skip_misc() {
        for (;;) {
            skip_whitespace();
            if (starts_with("<!--")) {
                skip_until("-->", "comment");
            } else if (starts_with("<?")) {
                skip_until("?>", "processing instruction");
            } else {
                return;
            }
        }
    }

    static bool is_name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-' ||
               c == '.' || c == ':';
    }

    std::string parse_name() {
        size_t start = pos_;
        while (!at_end() && is_name_char(peek())) {
            ++pos_;
        }
        if (pos_ == start) {
            fail("expected a name");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string decode_entities(std::string_view raw) {
        std::string out;
        out.reserve(raw.size());
        for (size_t i = 0; i < raw.size();) {
            if (raw[i] != '&') {
                out += raw[i++];
                continue;
            }
            size_t semi = raw.find(';', i);
            if (semi == std::string_view::npos) {
                fail("unterminated entity reference");
            }
            std::string_view entity = raw.substr(i + 1, semi - i - 1);
            if (entity == "lt") {
                out += '<';
            } else if (entity == "gt") {
                out += '>';
            } else if (entity == "amp") {
                out += '&';
            } else if (entity == "quot") {
                out += '"';
            } else if (entity == "apos") {
                out += '\'';
            } else if (!entity.empty() && entity[0] == '#') {
                out += decode_char_reference(entity.substr(1));
            } else {
                fail("unknown entity '&" + std::string(entity) + ";'");
            }
            i = semi + 1;
        }
        return out;
    }

    char decode_char_reference(std::string_view digits) {
        int base = 10;
        if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
            base = 16;
            digits.remove_prefix(1);
        }
        if (digits.empty()) {
            fail("empty character reference");
        }
        uint32_t code = 0;
        for (char c : digits) {
            int digit;
            if (c >= '0' && c <= '9') {
                digit = c - '0';
            } else if (base == 16 && c >= 'a' && c <= 'f') {
                digit = c - 'a' + 10;
            } else if (base == 16 && c >= 'A' && c <= 'F') {
                digit = c - 'A' + 10;
            } else {
                fail("invalid character reference");
            }
            code = code * static_cast<uint32_t>(base) + static_cast<uint32_t>(digit);
            if (code > 0x10FFFF) {
                fail("character reference out of range");
            }
        }
        if (code == 0 || code > 0x7F) {
            // Hierarchy dumps are ASCII in practice; keep the decoder honest.
            fail("only ASCII character references are supported");
        }
        return static_cast<char>(code);
    }

    std::pair<std::string, std::string> parse_attribute() {
        std::string name = parse_name();
        skip_whitespace();
        expect("=");
        skip_whitespace();
        if (at_end() || (peek() != '"' && peek() != '\'')) {
            fail("expected a quoted attribute value");
        }
        char quote = peek();
        ++pos_;
        size_t close = text_.find(quote, pos_);
        if (close == std::string_view::npos) {
            fail("unterminated attribute value");
        }
        std::string_view raw = text_.substr(pos_, close - pos_);
        if (raw.find('<') != std::string_view::npos) {
            fail("'<' is not allowed inside an attribute value");
        }
        pos_ = close + 1;
        return {std::move(name), decode_entities(raw)};
    }

    XmlElement parse_element() {
        expect("<");
        XmlElement element;
        element.name = parse_name();
        for (;;) {
            skip_whitespace();
            if (at_end()) {
                fail("unterminated element '" + element.name + "'");
            }
            if (starts_with("/>")) {
                pos_ += 2;
                return element;
            }
            if (peek() == '>') {
                ++pos_;
                parse_children(element);
                return element;
            }
            element.attributes.push_back(parse_attribute());
        }
    }

    void parse_children(XmlElement& parent) {
        for (;;) {
            // Character data between elements is ignored.
            while (!at_end() && peek() != '<') {
                ++pos_;
            }
            if (at_end()) {
                fail("unterminated element '" + parent.name + "'");
            }
            if (starts_with("<!--")) {
                skip_until("-->", "comment");
            } else if (starts_with("<![CDATA[")) {
                skip_until("]]>", "CDATA section");
            } else if (starts_with("</")) {
                pos_ += 2;
                std::string name = parse_name();
                if (name != parent.name) {
                    fail("mismatched closing tag '</" + name + ">' for '" + parent.name + "'");
                }
                skip_whitespace();
                expect(">");
                return;
            } else {
                parent.children.push_back(parse_element());
            }
        }
    }
};

} // namespace

XmlElement parse_xml(std::string_view text) {
    return Parser(text).parse_document();
}

std::string xml_escape(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c; break;
        }
    }
    return out;
}

} // namespace uirepro
