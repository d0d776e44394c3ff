#include "script_gen.hpp"

#include "uirepro/errors.hpp"
#include "uirepro/report/analyzer.hpp"
#include "uirepro/run/oracle.hpp"
#include "uirepro/sim/sim_device.hpp"
#include "uirepro/ui/actions.hpp"
#include "uirepro/ui/render.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

namespace uirepro::testsupport {

using nlohmann::json;

std::filesystem::path fixture_dir() {
    return std::filesystem::path(UIREPRO_FIXTURE_DIR);
}

std::vector<FixtureEntry> load_fixture_index(const std::filesystem::path& fixtures_dir) {
    std::filesystem::path index_path = fixtures_dir / "index.json";
    std::ifstream in(index_path);
    if (!in) {
        throw UnreadableFileError("cannot open " + index_path.string());
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw SchemaViolationError(index_path.string() + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("fixtures") || !doc.at("fixtures").is_array()) {
        throw SchemaViolationError(index_path.string() + ": expected {\"fixtures\": [...]}");
    }
    std::vector<FixtureEntry> entries;
    for (const json& row : doc.at("fixtures")) {
        FixtureEntry entry;
        entry.name = row.at("name").get<std::string>();
        entry.app = fixtures_dir / row.at("app").get<std::string>();
        entry.report = fixtures_dir / row.at("report").get<std::string>();
        entry.mock = fixtures_dir / row.at("mock").get<std::string>();
        entry.bug_id = row.at("bug_id").get<std::string>();
        entry.gt_depth = row.at("gt_depth").get<int>();
        std::string kind = row.at("kind").get<std::string>();
        if (kind != "crash" && kind != "non_crash") {
            throw SchemaViolationError(index_path.string() + ": fixture '" + entry.name +
                                       "': unknown kind '" + kind + "'");
        }
        entry.crash = kind == "crash";
        if (row.contains("symptom")) {
            entry.symptom = row.at("symptom").get<std::string>();
        }
        entry.adversarial = row.value("adversarial", false);
        entries.push_back(std::move(entry));
    }
    return entries;
}

namespace {

// Equality that ignores the InputText payload: derived actions carry an
// empty payload which is only filled at execution time.
bool same_unfilled(const UIAction& a, const UIAction& b) {
    return a.kind == b.kind && a.target == b.target && a.direction == b.direction &&
           a.key == b.key;
}

std::string first_line(const std::string& text) {
    size_t pos = text.find('\n');
    return pos == std::string::npos ? text : text.substr(0, pos);
}

std::string non_crash_summary(const std::string& rendered_action, const UIState& after) {
    return "Performed " + rendered_action +
           "; the screen now shows: " + render_state_summary(after);
}

std::string crash_summary(const std::string& rendered_action, const std::string& record) {
    return rendered_action + " crashed the app. Crash log: " + record;
}

json make_rule(const char* role, std::string match, std::string respond) {
    return json{{"role", role}, {"match", std::move(match)}, {"respond", std::move(respond)}};
}

// What the engine sees at each ground-truth depth, reconstructed by
// replaying the oracle's sequence against a private simulator instance.
struct StepTrace {
    std::string filter_key;          // prompt substring that selects this depth
    std::vector<size_t> keep;        // ascending indices into derive_actions(before)
    UIAction filled_action;          // ground-truth action with payload
    std::string summary;             // scripted transition summary of the step
    std::vector<std::string> ghost_summaries; // summaries of look-alike decoys
};

} // namespace

json generate_mock_script(const SimApp& app, const std::string& bug_id,
                          const BugReport& report) {
    const SimBug* bug = app.find_bug(bug_id);
    if (bug == nullptr) {
        throw Error("app '" + app.app_name + "' declares no bug '" + bug_id + "'");
    }

    std::optional<std::vector<UIAction>> oracle = brute_force_oracle(app, bug_id, 30);
    if (!oracle || oracle->empty()) {
        throw Error("bug '" + bug_id + "' is unreachable within 30 actions");
    }

    SimDevice device(std::make_shared<const SimApp>(app), "gen-");
    UIState current = device.reset();

    std::vector<StepTrace> steps;
    std::vector<std::string> widget_lists; // every widget list a filter prompt can show
    std::string final_crash_record;
    for (size_t k = 0; k < oracle->size(); ++k) {
        const UIAction& goal = (*oracle)[k];
        std::vector<UIAction> actions = derive_actions(current);
        widget_lists.push_back(render_widget_list(current, actions));

        size_t goal_index = actions.size();
        for (size_t i = 0; i < actions.size(); ++i) {
            if (same_unfilled(actions[i], goal)) {
                goal_index = i;
                break;
            }
        }
        if (goal_index == actions.size()) {
            throw Error("oracle step " + std::to_string(k + 1) + " for bug '" + bug_id +
                        "' is not among the derived actions of its screen");
        }

        StepTrace step;
        step.filled_action = actions[goal_index];
        step.filled_action.text = goal.text;
        step.filter_key = k == 0 ? "(no steps taken yet)" : steps[k - 1].summary;

        // Look-alikes: actions the filter prompt renders identically to the
        // goal. They are kept (and probed) alongside it, so the script must
        // also know how to prune the branches they open.
        std::string goal_rendered = render_action(actions[goal_index], current);
        for (size_t i = 0; i < actions.size(); ++i) {
            if (i == goal_index) {
                step.keep.push_back(i);
                continue;
            }
            if (action_tag(actions[i]) == action_tag(actions[goal_index]) &&
                render_action(actions[i], current) == goal_rendered) {
                step.keep.push_back(i);
            }
        }

        SnapshotId fork = device.snapshot();
        for (size_t i : step.keep) {
            if (i == goal_index) {
                continue;
            }
            UIAction decoy = actions[i];
            if (decoy.kind == ActionKind::InputText) {
                decoy.text = goal.text;
            }
            std::string decoy_rendered = render_action(decoy, current);
            StepResult taken = device.execute(decoy);
            if (taken.crashed) {
                step.ghost_summaries.push_back(
                    crash_summary(decoy_rendered, taken.crash_record.value_or("")));
            } else {
                step.ghost_summaries.push_back(
                    non_crash_summary(decoy_rendered, taken.new_state));
                widget_lists.push_back(
                    render_widget_list(taken.new_state, derive_actions(taken.new_state)));
            }
            device.rollback(fork);
        }

        std::string rendered = render_action(step.filled_action, current);
        StepResult result = device.execute(step.filled_action);
        if (result.crashed) {
            if (k + 1 != oracle->size()) {
                throw Error("bug '" + bug_id + "' crashed before the oracle path ended");
            }
            final_crash_record = result.crash_record.value_or("");
            step.summary = crash_summary(rendered, final_crash_record);
        } else {
            step.summary = non_crash_summary(rendered, result.new_state);
            current = result.new_state;
        }
        steps.push_back(std::move(step));
    }

    bool expects_crash = bug->kind == BugKind::Crash;
    if (expects_crash && final_crash_record.empty()) {
        throw Error("crash bug '" + bug_id + "' produced no crash record");
    }
    if (!expects_crash) {
        std::string final_summary = render_state_summary(current);
        if (bug->symptom.empty() || final_summary.find(bug->symptom) == std::string::npos) {
            throw Error("non-crash bug '" + bug_id +
                        "': the trigger screen does not show the declared symptom");
        }
        widget_lists.push_back(render_widget_list(current, derive_actions(current)));
    }

    // The specification's steps are the ground-truth actions as the engine
    // would phrase them; replay once more to resolve each against its screen.
    ReproductionSpecification spec;
    {
        SimDevice replay(std::make_shared<const SimApp>(app), "spec-");
        UIState at = replay.reset();
        for (const StepTrace& step : steps) {
            spec.steps.push_back(render_action(step.filled_action, at));
            StepResult result = replay.execute(step.filled_action);
            if (!result.crashed) {
                at = result.new_state;
            }
        }
    }
    spec.symptoms.push_back(expects_crash ? first_line(final_crash_record) : bug->symptom);
    spec.expects_crash = expects_crash;

    // Ambiguity audit: every trigger substring must select exactly the
    // prompts it was written for, under both the generated specification and
    // the raw-report fallback.
    std::vector<std::string> keys;
    for (const StepTrace& step : steps) {
        keys.push_back(step.filter_key);
        for (const std::string& ghost : step.ghost_summaries) {
            keys.push_back(ghost);
        }
    }
    keys.push_back(steps.back().summary);
    for (size_t i = 0; i < keys.size(); ++i) {
        for (size_t j = 0; j < keys.size(); ++j) {
            if (i != j && keys[i].find(keys[j]) != std::string::npos) {
                throw Error("ambiguous script trigger: \"" + keys[j] +
                            "\" occurs inside \"" + keys[i] + "\"");
            }
        }
    }
    std::vector<std::string> surroundings;
    surroundings.push_back(render_specification(spec));
    surroundings.push_back(render_specification(specification_from_raw_report(report)));
    surroundings.push_back(render_report(report));
    for (const std::string& list : widget_lists) {
        surroundings.push_back(list);
    }
    for (const std::string& key : keys) {
        for (const std::string& text : surroundings) {
            if (text.find(key) != std::string::npos) {
                throw Error("ambiguous script trigger: \"" + key +
                            "\" also occurs outside the path it marks");
            }
        }
    }

    json script = json::array();
    script.push_back(make_rule(
        "report_analysis", "",
        json{{"steps", spec.steps}, {"symptoms", spec.symptoms}, {"expects_crash", expects_crash}}
            .dump()));

    // Deepest keys first: a step-k prompt contains every earlier summary, so
    // later (shallower) rules must not shadow the one that belongs to k.
    for (size_t k = steps.size(); k-- > 0;) {
        json keep = json::array();
        for (size_t index : steps[k].keep) {
            keep.push_back(index);
        }
        script.push_back(
            make_rule("action_filter", steps[k].filter_key, json{{"keep", keep}}.dump()));
    }
    for (size_t k = steps.size(); k-- > 0;) {
        if (steps[k].filled_action.kind == ActionKind::InputText) {
            script.push_back(make_rule("input_text", steps[k].filter_key,
                                       steps[k].filled_action.text.value_or("test")));
        }
    }
    script.push_back(make_rule("transition_summary", "",
                               "Performed {{action}}; the screen now shows: {{after state}}"));

    json verdicts = json::array();
    for (const StepTrace& step : steps) {
        for (const std::string& ghost : step.ghost_summaries) {
            verdicts.push_back(json{{"match", ghost}, {"decision", "prune"}});
        }
    }
    verdicts.push_back(json{{"match", steps.back().summary}, {"decision", "candidate_success"}});
    for (size_t k = steps.size() - 1; k-- > 0;) {
        verdicts.push_back(json{{"match", steps[k].summary}, {"decision", "continue"}});
    }
    script.push_back(make_rule("path_evaluation", "",
                               json{{"verdicts", verdicts}, {"default", "prune"}}.dump()));

    if (!expects_crash) {
        script.push_back(make_rule(
            "bug_verification", bug->symptom,
            json{{"confirmed", true},
                 {"explanation", "the final screen shows the reported faulty behaviour"}}
                .dump()));
    }
    return script;
}

std::string dump_mock_script(const json& script) {
    return script.dump(2) + "\n";
}

} // namespace uirepro::testsupport
