#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace uirepro {

// A user-submitted bug report: title, free-form body, optional comments.
struct BugReport {
    std::string report_id; // file stem by default
    std::string title;
    std::string body;
    std::vector<std::string> comments;
};

// Report file format: first line is the title, the rest (after an optional
// blank line) is the body; each `--- comment ---` delimiter line starts a new
// comment block. Throws UnreadableFileError on I/O problems and
// MissingTitleError when the first line is empty.
BugReport load_report(const std::filesystem::path& path);
BugReport parse_report(const std::string& text, const std::string& report_id);

// Canonical prompt rendering: title, body and a numbered "Comments:" section
// when comments exist.
std::string render_report(const BugReport& report);

} // namespace uirepro
