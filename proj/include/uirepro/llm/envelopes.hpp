#pragma once

#include <json.hpp>

#include <optional>
#include <string>

namespace uirepro {

// Extracts the first JSON value from free-form model output by parsing the
// first balanced {...} or [...] found, which skips prose and Markdown code
// fences naturally. Returns nullopt when nothing parseable is present.
std::optional<nlohmann::json> extract_json(const std::string& content);

// Whitespace-trimmed copy.
std::string trim(const std::string& text);

// First non-empty line, trimmed — how free-text replies (e.g. text to type)
// are normalised.
std::string first_nonempty_line(const std::string& text);

} // namespace uirepro
