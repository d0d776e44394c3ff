#pragma once

#include "uirepro/ui/actions.hpp"
#include "uirepro/ui/widget.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uirepro {

// One executed action with its observations and one-sentence summary.
// `after` is absent when the action crashed the app (there is no usable
// screen); `summary` is never empty.
struct Transition {
    UIAction action;
    std::string action_rendered;
    UIState before;
    std::optional<UIState> after;
    bool crashed = false;
    std::optional<std::string> crash_record;
    std::string summary;
};

enum class PathStatus { Active, Pruned, CandidateSuccess, ConfirmedSuccess };

const char* to_string(PathStatus status);

// A candidate interaction sequence from the initial screen. Paths are value
// types: a child path is its parent's transitions plus one more.
struct ExplorationPath {
    uint64_t path_id = 0;
    std::vector<Transition> transitions;
    PathStatus status = PathStatus::Active;

    bool crashed() const { return !transitions.empty() && transitions.back().crashed; }
    size_t length() const { return transitions.size(); }
};

// Numbered single-line rendering "(1) <summary>; (2) <summary>; ...".
// An empty path renders as "(no steps taken yet)". When the path is longer
// than `max_tail` steps only the last `max_tail` are rendered, behind an
// explicit truncation note.
std::string render_path(const ExplorationPath& path, size_t max_tail = SIZE_MAX);

} // namespace uirepro
