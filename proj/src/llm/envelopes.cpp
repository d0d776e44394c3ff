#include "uirepro/llm/envelopes.hpp"

#include <cctype>

namespace uirepro {

using nlohmann::json;

std::string trim(const std::string& text) {
    size_t begin = 0;
    size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) {
        --end;
    }
    return text.substr(begin, end - begin);
}

std::string first_nonempty_line(const std::string& text) {
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string line = trim(text.substr(pos, eol == std::string::npos ? std::string::npos
                                                                          : eol - pos));
        if (!line.empty()) {
            return line;
        }
        if (eol == std::string::npos) {
            break;
        }
        pos = eol + 1;
    }
    return "";
}

namespace {

// Scan for the end of the balanced JSON value starting at `start`, honouring
// strings and escapes. Returns npos when unbalanced.
size_t find_balanced_end(const std::string& text, size_t start) {
    char open = text[start];
    char close = open == '{' ? '}' : ']';
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (size_t i = start; i < text.size(); ++i) {
        char c = text[i];
        if (in_string) {
            if (escaped) {
                escaped = false;
            } else if (c == '\\') {
                escaped = true;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == open) {
            ++depth;
        } else if (c == close) {
            --depth;
            if (depth == 0) {
                return i;
            }
        }
    }
    return std::string::npos;
}

} // namespace

std::optional<json> extract_json(const std::string& content) {
    for (size_t i = 0; i < content.size(); ++i) {
        if (content[i] != '{' && content[i] != '[') {
            continue;
        }
        size_t end = find_balanced_end(content, i);
        if (end == std::string::npos) {
            return std::nullopt;
        }
        json parsed = json::parse(content.substr(i, end - i + 1), nullptr,
                                  /*allow_exceptions=*/false);
        if (!parsed.is_discarded()) {
            return parsed;
        }
        // Balanced but unparseable (e.g. a brace inside prose); keep looking
        // after this candidate.
        i = end;
    }
    return std::nullopt;
}

} // namespace uirepro
