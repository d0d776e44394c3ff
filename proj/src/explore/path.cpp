#include "uirepro/explore/path.hpp"

namespace uirepro {

const char* to_string(PathStatus status) {
    switch (status) {
    case PathStatus::Active: return "Active";
    case PathStatus::Pruned: return "Pruned";
    case PathStatus::CandidateSuccess: return "CandidateSuccess";
    case PathStatus::ConfirmedSuccess: return "ConfirmedSuccess";
    }
    return "?";
}

std::string render_path(const ExplorationPath& path, size_t max_tail) {
    if (path.transitions.empty()) {
        return "(no steps taken yet)";
    }
    size_t total = path.transitions.size();
    size_t begin = 0;
    std::string out;
    if (total > max_tail) {
        begin = total - max_tail;
        out += "[earlier steps omitted; showing the last " + std::to_string(max_tail) + " of " +
               std::to_string(total) + "] ";
    }
    for (size_t i = begin; i < total; ++i) {
        if (i > begin) {
            out += "; ";
        }
        out += "(" + std::to_string(i + 1) + ") " + path.transitions[i].summary;
    }
    return out;
}

} // namespace uirepro
