#include "uirepro/report/bug_report.hpp"

#include "uirepro/errors.hpp"
#include "uirepro/llm/envelopes.hpp"

#include <fstream>
#include <sstream>

namespace uirepro {

namespace {

constexpr const char* kCommentDelimiter = "--- comment ---";

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    size_t pos = 0;
    for (;;) {
        size_t eol = text.find('\n', pos);
        std::string line =
            text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(std::move(line));
        if (eol == std::string::npos) {
            break;
        }
        pos = eol + 1;
    }
    return lines;
}

std::string join_block(const std::vector<std::string>& lines, size_t begin, size_t end) {
    // Trim leading/trailing blank lines of the block, keep interior ones.
    while (begin < end && trim(lines[begin]).empty()) {
        ++begin;
    }
    while (end > begin && trim(lines[end - 1]).empty()) {
        --end;
    }
    std::string out;
    for (size_t i = begin; i < end; ++i) {
        if (i > begin) {
            out += "\n";
        }
        out += lines[i];
    }
    return out;
}

} // namespace

BugReport parse_report(const std::string& text, const std::string& report_id) {
    std::vector<std::string> lines = split_lines(text);
    BugReport report;
    report.report_id = report_id;
    report.title = trim(lines.empty() ? "" : lines[0]);
    if (report.title.empty()) {
        throw MissingTitleError("bug report '" + report_id + "' has no title line");
    }

    std::vector<size_t> delimiters;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]) == kCommentDelimiter) {
            delimiters.push_back(i);
        }
    }
    size_t body_end = delimiters.empty() ? lines.size() : delimiters[0];
    report.body = join_block(lines, 1, body_end);
    for (size_t d = 0; d < delimiters.size(); ++d) {
        size_t begin = delimiters[d] + 1;
        size_t end = d + 1 < delimiters.size() ? delimiters[d + 1] : lines.size();
        report.comments.push_back(join_block(lines, begin, end));
    }
    return report;
}

BugReport load_report(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UnreadableFileError("cannot open bug report file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw UnreadableFileError("cannot read bug report file: " + path.string());
    }
    return parse_report(buffer.str(), path.stem().string());
}

std::string render_report(const BugReport& report) {
    std::string out = report.title;
    if (!report.body.empty()) {
        out += "\n\n" + report.body;
    }
    if (!report.comments.empty()) {
        out += "\n\nComments:";
        for (size_t i = 0; i < report.comments.size(); ++i) {
            out += "\n(" + std::to_string(i + 1) + ") " + report.comments[i];
        }
    }
    return out;
}

} // namespace uirepro
