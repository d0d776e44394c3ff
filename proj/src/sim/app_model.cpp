#include "uirepro/sim/app_model.hpp"

#include "uirepro/errors.hpp"
#include "uirepro/ui/hierarchy.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace uirepro {

using nlohmann::json;

const SimState& SimApp::state(const std::string& key) const {
    auto it = states.find(key);
    if (it == states.end()) {
        throw DanglingStateKeyError("unknown state key '" + key + "' in app '" + app_name + "'");
    }
    return it->second;
}

const SimBug* SimApp::find_bug(const std::string& bug_id) const {
    for (const SimBug& bug : bugs) {
        if (bug.id == bug_id) {
            return &bug;
        }
    }
    return nullptr;
}

namespace {

[[noreturn]] void violation(const std::string& path, const std::string& what) {
    throw SchemaViolationError(path + ": " + what);
}

const json& require(const json& object, const std::string& path, const char* key) {
    auto it = object.find(key);
    if (it == object.end()) {
        violation(path, std::string("missing required field '") + key + "'");
    }
    return *it;
}

std::string require_string(const json& object, const std::string& path, const char* key,
                           bool allow_empty = false) {
    const json& value = require(object, path, key);
    if (!value.is_string()) {
        violation(path + "." + key, "expected a string");
    }
    std::string out = value.get<std::string>();
    if (out.empty() && !allow_empty) {
        violation(path + "." + key, "must not be empty");
    }
    return out;
}

ActionKind parse_kind(const std::string& raw, const std::string& path) {
    if (raw == "click") return ActionKind::Click;
    if (raw == "long_click") return ActionKind::LongClick;
    if (raw == "swipe") return ActionKind::Swipe;
    if (raw == "input_text") return ActionKind::InputText;
    if (raw == "rotate") return ActionKind::Rotate;
    if (raw == "press") return ActionKind::Press;
    violation(path, "unknown action kind '" + raw +
                        "' (expected click, long_click, swipe, input_text, rotate or press)");
}

SimTrigger parse_trigger(const json& node, const std::string& path) {
    if (!node.is_object()) {
        violation(path, "expected an object");
    }
    SimTrigger trigger;
    trigger.kind = parse_kind(require_string(node, path, "kind"), path + ".kind");
    bool targeted = trigger.kind == ActionKind::Click || trigger.kind == ActionKind::LongClick ||
                    trigger.kind == ActionKind::Swipe || trigger.kind == ActionKind::InputText;
    bool has_payload = trigger.kind == ActionKind::InputText || trigger.kind == ActionKind::Swipe ||
                       trigger.kind == ActionKind::Press;
    if (node.contains("target_resource_id")) {
        if (!targeted) {
            violation(path + ".target_resource_id", "not applicable to this action kind");
        }
        trigger.target_resource_id = require_string(node, path, "target_resource_id");
    }
    if (node.contains("target_text")) {
        if (!targeted) {
            violation(path + ".target_text", "not applicable to this action kind");
        }
        trigger.target_text = require_string(node, path, "target_text", /*allow_empty=*/true);
    }
    if (node.contains("target_node_id")) {
        if (!targeted) {
            violation(path + ".target_node_id", "not applicable to this action kind");
        }
        trigger.target_node_id = require_string(node, path, "target_node_id");
    }
    if (node.contains("input_pattern")) {
        if (!has_payload) {
            violation(path + ".input_pattern", "not applicable to this action kind");
        }
        trigger.input_pattern = require_string(node, path, "input_pattern");
        try {
            trigger.compiled_pattern =
                std::make_shared<const std::regex>(*trigger.input_pattern, std::regex::ECMAScript);
        } catch (const std::regex_error& e) {
            violation(path + ".input_pattern", std::string("invalid regex: ") + e.what());
        }
    }
    if (node.contains("when")) {
        const json& when = node.at("when");
        if (!when.is_object()) {
            violation(path + ".when", "expected an object of variable -> value");
        }
        for (const auto& [var, value] : when.items()) {
            if (!value.is_string()) {
                violation(path + ".when." + var, "expected a string value");
            }
            trigger.when[var] = value.get<std::string>();
        }
    }
    return trigger;
}

std::vector<SimEffect> parse_effects(const json& node, const std::string& path) {
    if (!node.is_array()) {
        violation(path, "expected an array");
    }
    std::vector<SimEffect> effects;
    for (size_t i = 0; i < node.size(); ++i) {
        const json& entry = node.at(i);
        std::string entry_path = path + "[" + std::to_string(i) + "]";
        if (!entry.is_object()) {
            violation(entry_path, "expected an object");
        }
        SimEffect effect;
        effect.var = require_string(entry, entry_path, "var");
        bool has_set = entry.contains("set");
        bool has_inc = entry.contains("inc");
        if (has_set == has_inc) {
            violation(entry_path, "exactly one of 'set' or 'inc' is required");
        }
        if (has_set) {
            const json& value = entry.at("set");
            if (!value.is_string()) {
                violation(entry_path + ".set", "expected a string");
            }
            effect.set = value.get<std::string>();
        } else {
            const json& value = entry.at("inc");
            if (!value.is_number_integer()) {
                violation(entry_path + ".inc", "expected an integer");
            }
            effect.inc = value.get<long long>();
        }
        effects.push_back(std::move(effect));
    }
    return effects;
}

// Rejects duplicate object keys, which nlohmann otherwise silently merges.
// Duplicates directly under "states" get the dedicated error type.
json parse_json_strict(const std::string& text, const std::string& origin) {
    std::vector<std::set<json>> seen;
    std::vector<std::string> object_names;
    std::string pending_key;
    json::parser_callback_t callback = [&](int /*depth*/, json::parse_event_t event,
                                           json& parsed) {
        switch (event) {
        case json::parse_event_t::object_start:
            seen.emplace_back();
            object_names.push_back(pending_key);
            pending_key.clear();
            break;
        case json::parse_event_t::object_end:
            seen.pop_back();
            object_names.pop_back();
            break;
        case json::parse_event_t::key: {
            pending_key = parsed.get<std::string>();
            if (!seen.back().insert(parsed).second) {
                if (object_names.back() == "states") {
                    throw DuplicateStateKeyError(origin + ": duplicate state key '" + pending_key +
                                                 "'");
                }
                throw SchemaViolationError(origin + ": duplicate key '" + pending_key + "'");
            }
            break;
        }
        default:
            break;
        }
        return true;
    };
    try {
        return json::parse(text, callback);
    } catch (const json::parse_error& e) {
        throw SchemaViolationError(origin + ": " + e.what());
    }
}

} // namespace

SimApp parse_app_model(const std::string& json_text, const std::string& origin) {
    json doc = parse_json_strict(json_text, origin);
    if (!doc.is_object()) {
        violation(origin, "expected a top-level object");
    }
    const json& schema = require(doc, origin, "schema");
    if (!schema.is_number_integer() || schema.get<int>() != 1) {
        violation(origin + ".schema", "unsupported schema version (expected 1)");
    }

    SimApp app;
    app.app_name = require_string(doc, origin, "app_name");
    app.initial_state = require_string(doc, origin, "initial_state");

    const json& states = require(doc, origin, "states");
    if (!states.is_object() || states.empty()) {
        violation(origin + ".states", "expected a non-empty object");
    }
    for (const auto& [key, value] : states.items()) {
        std::string path = origin + ".states." + key;
        if (!value.is_object()) {
            violation(path, "expected an object");
        }
        SimState state;
        state.key = key;
        state.activity = require_string(value, path, "activity");
        state.visual = require_string(value, path, "visual", /*allow_empty=*/true);
        std::string xml = require_string(value, path, "hierarchy_xml");
        try {
            state.hierarchy = std::make_shared<const WidgetTree>(parse_view_hierarchy(xml));
        } catch (const Error& e) {
            violation(path + ".hierarchy_xml", e.what());
        }
        app.states.emplace(key, std::move(state));
    }

    auto require_state = [&](const std::string& key, const std::string& path) {
        if (app.states.find(key) == app.states.end()) {
            throw DanglingStateKeyError(path + ": references unknown state '" + key + "'");
        }
    };
    require_state(app.initial_state, origin + ".initial_state");

    if (doc.contains("rules")) {
        const json& rules = doc.at("rules");
        if (!rules.is_array()) {
            violation(origin + ".rules", "expected an array");
        }
        for (size_t i = 0; i < rules.size(); ++i) {
            const json& entry = rules.at(i);
            std::string path = origin + ".rules[" + std::to_string(i) + "]";
            if (!entry.is_object()) {
                violation(path, "expected an object");
            }
            SimRule rule;
            rule.from = require_string(entry, path, "from");
            rule.to = require_string(entry, path, "to");
            require_state(rule.from, path + ".from");
            require_state(rule.to, path + ".to");
            rule.on = parse_trigger(require(entry, path, "on"), path + ".on");
            if (entry.contains("effects")) {
                rule.effects = parse_effects(entry.at("effects"), path + ".effects");
            }
            app.rules.push_back(std::move(rule));
        }
    }

    if (doc.contains("bugs")) {
        const json& bugs = doc.at("bugs");
        if (!bugs.is_array()) {
            violation(origin + ".bugs", "expected an array");
        }
        std::set<std::string> bug_ids;
        for (size_t i = 0; i < bugs.size(); ++i) {
            const json& entry = bugs.at(i);
            std::string path = origin + ".bugs[" + std::to_string(i) + "]";
            if (!entry.is_object()) {
                violation(path, "expected an object");
            }
            SimBug bug;
            bug.id = require_string(entry, path, "id");
            if (!bug_ids.insert(bug.id).second) {
                violation(path + ".id", "duplicate bug id '" + bug.id + "'");
            }
            std::string kind = require_string(entry, path, "kind");
            if (kind == "crash") {
                bug.kind = BugKind::Crash;
                bug.crash_log = require_string(entry, path, "crash_log");
                if (entry.contains("symptom")) {
                    violation(path + ".symptom", "not applicable to a crash bug");
                }
            } else if (kind == "non_crash") {
                bug.kind = BugKind::NonCrash;
                bug.symptom = require_string(entry, path, "symptom");
                if (entry.contains("crash_log")) {
                    violation(path + ".crash_log", "not applicable to a non-crash bug");
                }
            } else {
                violation(path + ".kind", "expected \"crash\" or \"non_crash\"");
            }
            bug.trigger = require_string(entry, path, "trigger");
            require_state(bug.trigger, path + ".trigger");
            app.bugs.push_back(std::move(bug));
        }
    }

    return app;
}

SimApp load_app_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UnreadableFileError("cannot open app model file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw UnreadableFileError("cannot read app model file: " + path.string());
    }
    return parse_app_model(buffer.str(), path.filename().string());
}

namespace {

std::string action_payload(const UIAction& action) {
    switch (action.kind) {
    case ActionKind::InputText:
        return action.text.value_or("");
    case ActionKind::Swipe:
        return to_string(action.direction.value_or(SwipeDirection::Up));
    case ActionKind::Press: {
        std::string name = to_string(action.key.value_or(PressKey::Back));
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return name;
    }
    default:
        return "";
    }
}

bool trigger_matches(const SimTrigger& trigger, const UIAction& action, const Widget* target,
                     const std::string& payload, const SimConfig& config) {
    if (trigger.kind != action.kind) {
        return false;
    }
    if (trigger.target_resource_id) {
        if (target == nullptr || !target->resource_id ||
            *target->resource_id != *trigger.target_resource_id) {
            return false;
        }
    }
    if (trigger.target_text) {
        if (target == nullptr || !target->text || *target->text != *trigger.target_text) {
            return false;
        }
    }
    if (trigger.target_node_id) {
        if (target == nullptr || target->node_id != *trigger.target_node_id) {
            return false;
        }
    }
    if (trigger.compiled_pattern && !std::regex_search(payload, *trigger.compiled_pattern)) {
        return false;
    }
    for (const auto& [var, expected] : trigger.when) {
        auto it = config.vars.find(var);
        const std::string& actual = it == config.vars.end() ? std::string() : it->second;
        if (actual != expected) {
            return false;
        }
    }
    return true;
}

void apply_effects(const std::vector<SimEffect>& effects, SimConfig& config) {
    for (const SimEffect& effect : effects) {
        if (effect.set) {
            config.vars[effect.var] = *effect.set;
        } else if (effect.inc) {
            long long current = 0;
            auto it = config.vars.find(effect.var);
            if (it != config.vars.end()) {
                try {
                    current = std::stoll(it->second);
                } catch (const std::exception&) {
                    current = 0;
                }
            }
            config.vars[effect.var] = std::to_string(current + *effect.inc);
        }
    }
}

} // namespace

SimStepOutcome sim_step(const SimApp& app, SimConfig& config, const UIAction& action) {
    if (config.crashed) {
        throw SessionCrashedError("app '" + app.app_name + "' has crashed; reset() first");
    }
    const SimState& current = app.state(config.state_key);
    const Widget* target = nullptr;
    if (action.target) {
        target = find_widget(*current.hierarchy, *action.target);
        if (target == nullptr) {
            throw UnresolvedTargetError("no widget with id '" + *action.target + "' on screen '" +
                                        current.key + "'");
        }
    }
    std::string payload = action_payload(action);
    for (const SimRule& rule : app.rules) {
        if (rule.from != config.state_key) {
            continue;
        }
        if (!trigger_matches(rule.on, action, target, payload, config)) {
            continue;
        }
        apply_effects(rule.effects, config);
        config.state_key = rule.to;
        break;
    }
    SimStepOutcome outcome;
    outcome.new_state_key = config.state_key;
    for (const SimBug& bug : app.bugs) {
        if (bug.kind == BugKind::Crash && bug.trigger == config.state_key) {
            config.crashed = true;
            config.crash_record = bug.crash_log;
            outcome.crashed = true;
            outcome.crash_record = bug.crash_log;
            break;
        }
    }
    return outcome;
}

} // namespace uirepro
