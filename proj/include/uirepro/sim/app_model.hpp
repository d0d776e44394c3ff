#pragma once

#include "uirepro/ui/actions.hpp"
#include "uirepro/ui/widget.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace uirepro {

// One named screen of a simulated app.
struct SimState {
    std::string key;
    std::string activity;
    std::shared_ptr<const WidgetTree> hierarchy;
    std::string visual;
};

// Matcher for incoming actions. All present fields must match; `when` adds
// conditions on simulator variables (a variable that was never set compares
// as the empty string). `input_pattern` is an ECMAScript regex searched
// against the action payload: the typed text for InputText, the direction
// name for Swipe, the lower-case key name for Press. `target_node_id`
// matches the widget's position-derived id ("n3"), which lets a model route
// two widgets apart even when every visible attribute is identical.
struct SimTrigger {
    ActionKind kind = ActionKind::Click;
    std::optional<std::string> target_resource_id;
    std::optional<std::string> target_text;
    std::optional<std::string> target_node_id;
    std::optional<std::string> input_pattern;
    std::map<std::string, std::string> when;

    std::shared_ptr<const std::regex> compiled_pattern;
};

// Variable update applied when a rule fires: either set to a string or
// increment numerically (a missing or non-numeric current value counts as 0).
struct SimEffect {
    std::string var;
    std::optional<std::string> set;
    std::optional<long long> inc;
};

struct SimRule {
    std::string from;
    SimTrigger on;
    std::string to;
    std::vector<SimEffect> effects;
};

enum class BugKind { Crash, NonCrash };

// A bug is armed on a trigger state: crash bugs fire (and record a crash log)
// whenever an action lands on that state; non-crash bugs simply mean the
// trigger state's screen shows the faulty behaviour described by `symptom`.
struct SimBug {
    std::string id;
    BugKind kind = BugKind::Crash;
    std::string trigger;
    std::string crash_log; // Crash only
    std::string symptom;   // NonCrash only
};

struct SimApp {
    std::string app_name;
    std::string initial_state;
    std::map<std::string, SimState> states;
    std::vector<SimRule> rules;
    std::vector<SimBug> bugs;

    const SimState& state(const std::string& key) const;
    const SimBug* find_bug(const std::string& bug_id) const;
};

// Loads and validates a simulated-app model (see docs/file-formats.md).
// Throws SchemaViolationError with a field path on structural problems,
// DuplicateStateKeyError / DanglingStateKeyError on key issues, and
// UnreadableFileError when the file cannot be read.
SimApp load_app_model(const std::filesystem::path& path);
SimApp parse_app_model(const std::string& json_text, const std::string& origin = "<string>");

// Full simulator configuration between steps: current state key, variable
// store and crash flag. Value type so it can be snapshotted by copy.
struct SimConfig {
    std::string state_key;
    std::map<std::string, std::string> vars;
    bool crashed = false;
    std::string crash_record;

    bool operator==(const SimConfig&) const = default;
};

struct SimStepOutcome {
    std::string new_state_key;
    bool crashed = false;
    std::string crash_record;
};

// Advances `config` by one action: the first rule whose `from` and trigger
// match fires (applying its effects); with no matching rule the state is
// unchanged. A crash bug whose trigger equals the resulting state fires
// afterwards. Throws UnresolvedTargetError when the action's target id does
// not exist in the current screen and SessionCrashedError when `config` is
// already crashed. Shared by the simulated device and the search oracle.
SimStepOutcome sim_step(const SimApp& app, SimConfig& config, const UIAction& action);

} // namespace uirepro
