#include "uirepro/run/session.hpp"

#include "uirepro/errors.hpp"
#include "uirepro/evaluate/evaluator.hpp"
#include "uirepro/explore/explorer.hpp"
#include "uirepro/report/analyzer.hpp"
#include "uirepro/ui/render.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>

namespace uirepro {

const char* to_string(SessionOutcome outcome) {
    switch (outcome) {
    case SessionOutcome::Success: return "success";
    case SessionOutcome::BudgetExceededActions: return "budget_exceeded_actions";
    case SessionOutcome::BudgetExceededTime: return "budget_exceeded_time";
    case SessionOutcome::Exhausted: return "exhausted";
    case SessionOutcome::Error: return "error";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

// Control-flow signal for budget exhaustion. Deliberately not derived from
// Error so no catch(Error&) in between can swallow it.
struct BudgetStop {
    SessionOutcome which;
};

// Wraps the real device to meter executed actions: the budgets are checked
// strictly before every execute, so the engine never runs past them.
class BudgetedDevice : public Device {
public:
    BudgetedDevice(Device& inner, const SessionConfig& config, Clock::time_point started,
                   int64_t& executed)
        : inner_(inner), config_(config), started_(started), executed_(executed) {}

    UIState reset() override { return inner_.reset(); }

    StepResult execute(const UIAction& action) override {
        if (executed_ >= config_.max_actions) {
            throw BudgetStop{SessionOutcome::BudgetExceededActions};
        }
        if (elapsed_minutes() > config_.max_minutes) {
            throw BudgetStop{SessionOutcome::BudgetExceededTime};
        }
        StepResult result = inner_.execute(action);
        ++executed_;
        return result;
    }

    SnapshotId snapshot() override { return inner_.snapshot(); }
    void rollback(const SnapshotId& snapshot) override { inner_.rollback(snapshot); }
    UIState capture_screen() override { return inner_.capture_screen(); }
    std::optional<std::string> crash_log() const override { return inner_.crash_log(); }

    double elapsed_minutes() const {
        return std::chrono::duration<double>(Clock::now() - started_).count() / 60.0;
    }

private:
    Device& inner_;
    const SessionConfig& config_;
    Clock::time_point started_;
    int64_t& executed_;
};

// Keeps at most `cap` snapshots, evicting the least recently used. Snapshots
// are cheap for the simulator but bounded here so the strategy transfers to
// real devices where each one holds actual storage.
class SnapshotPool {
public:
    explicit SnapshotPool(size_t cap) : cap_(cap) {}

    std::optional<SnapshotId> get(uint64_t path_id) {
        auto it = entries_.find(path_id);
        if (it == entries_.end()) {
            return std::nullopt;
        }
        touch(path_id);
        return it->second;
    }

    void put(uint64_t path_id, SnapshotId snapshot) {
        entries_[path_id] = snapshot;
        touch(path_id);
        while (entries_.size() > cap_) {
            uint64_t victim = recency_.front();
            recency_.erase(recency_.begin());
            entries_.erase(victim);
        }
    }

private:
    void touch(uint64_t path_id) {
        auto it = std::find(recency_.begin(), recency_.end(), path_id);
        if (it != recency_.end()) {
            recency_.erase(it);
        }
        recency_.push_back(path_id);
    }

    size_t cap_;
    std::map<uint64_t, SnapshotId> entries_;
    std::vector<uint64_t> recency_;
};

struct SessionSuccess {
    std::vector<UIAction> trace;
    std::vector<std::string> summaries;
};

class Session {
public:
    Session(const BugReport& report, Device& device, LlmGateway& gateway,
            const SessionConfig& config, Clock::time_point started, int64_t& executed)
        : report_(report), config_(config), gateway_(gateway),
          device_(device, config, started, executed),
          pool_(static_cast<size_t>(std::max(1, config.snapshot_cap))) {}

    std::optional<SessionSuccess> run() {
        ReproductionSpecification spec = config_.disable.report_analysis
                                             ? specification_from_raw_report(report_)
                                             : analyze_report(report_, gateway_);

        ExplorationPath root;
        root.path_id = next_path_id_++;
        std::vector<ExplorationPath> frontier{root};

        while (!frontier.empty()) {
            if (device_.elapsed_minutes() > config_.max_minutes) {
                throw BudgetStop{SessionOutcome::BudgetExceededTime};
            }
            std::vector<ExplorationPath> children;
            for (const ExplorationPath& path : frontier) {
                expand(path, spec, children);
            }

            std::vector<PathVerdict> verdicts =
                evaluate_paths(children, spec, gateway_, config_.beam);

            std::vector<ExplorationPath> next_frontier;
            std::vector<ExplorationPath> candidates;
            for (size_t i = 0; i < children.size(); ++i) {
                switch (verdicts[i].decision) {
                case PathDecision::Continue:
                    children[i].status = PathStatus::Active;
                    next_frontier.push_back(std::move(children[i]));
                    break;
                case PathDecision::CandidateSuccess:
                    children[i].status = PathStatus::CandidateSuccess;
                    candidates.push_back(std::move(children[i]));
                    break;
                case PathDecision::Prune:
                    children[i].status = PathStatus::Pruned;
                    break;
                }
            }

            for (ExplorationPath& candidate : candidates) {
                if (config_.disable.bug_verification) {
                    return finish(candidate);
                }
                std::optional<std::string> crash_log;
                if (candidate.crashed()) {
                    crash_log = candidate.transitions.back().crash_record;
                }
                VerificationResult verdict = verify_bug(candidate, spec, crash_log, gateway_);
                if (verdict.confirmed) {
                    return finish(candidate);
                }
                if (!candidate.crashed()) {
                    // Worth extending: verification rejected the claim but
                    // the path is still alive.
                    candidate.status = PathStatus::Active;
                    next_frontier.push_back(std::move(candidate));
                } else {
                    candidate.status = PathStatus::Pruned;
                }
            }

            std::sort(next_frontier.begin(), next_frontier.end(),
                      [](const ExplorationPath& a, const ExplorationPath& b) {
                          return a.path_id < b.path_id;
                      });
            frontier = std::move(next_frontier);
        }
        return std::nullopt; // exhausted
    }

private:
    std::optional<SessionSuccess> finish(ExplorationPath& path) {
        path.status = PathStatus::ConfirmedSuccess;
        SessionSuccess success;
        for (const Transition& transition : path.transitions) {
            success.trace.push_back(transition.action);
            success.summaries.push_back(transition.summary);
        }
        return success;
    }

    // Brings the device to the end state of `path`: by stored snapshot when
    // possible, else by replaying the parent's snapshot plus one action, else
    // by full replay from reset. Replayed actions count against the budget.
    void reposition(const ExplorationPath& path) {
        if (std::optional<SnapshotId> snapshot = pool_.get(path.path_id)) {
            device_.rollback(*snapshot);
            return;
        }
        if (path.transitions.empty()) {
            device_.reset();
            pool_.put(path.path_id, device_.snapshot());
            return;
        }
        auto parent = parents_.find(path.path_id);
        if (parent != parents_.end()) {
            if (std::optional<SnapshotId> snapshot = pool_.get(parent->second)) {
                device_.rollback(*snapshot);
                device_.execute(path.transitions.back().action);
                pool_.put(path.path_id, device_.snapshot());
                return;
            }
        }
        device_.reset();
        for (const Transition& transition : path.transitions) {
            device_.execute(transition.action);
        }
        pool_.put(path.path_id, device_.snapshot());
    }

    void expand(const ExplorationPath& path, const ReproductionSpecification& spec,
                std::vector<ExplorationPath>& children) {
        reposition(path);
        UIState state = device_.capture_screen();

        if (!config_.disable.action_exploration) {
            PreExploreOptions options;
            options.summarize = !config_.disable.transition_summary;
            std::vector<Transition> transitions =
                pre_explore(state, spec, path, device_, gateway_, options);
            for (Transition& transition : transitions) {
                ExplorationPath child;
                child.path_id = next_path_id_++;
                child.transitions = path.transitions;
                child.transitions.push_back(std::move(transition));
                parents_[child.path_id] = path.path_id;
                children.push_back(std::move(child));
            }
            return;
        }

        // Probing disabled: commit to the filter's top-ranked action and keep
        // the device where it lands (no rollback, so the next round is free).
        std::vector<UIAction> actions = derive_actions(state);
        FilterOutcome filtered = filter_actions_detailed(actions, state, spec, path, gateway_);
        UIAction action = actions[filtered.top_index];
        if (action.kind == ActionKind::InputText && (!action.text || action.text->empty())) {
            const Widget* widget =
                state.hierarchy ? find_widget(*state.hierarchy, action.target.value_or(""))
                                : nullptr;
            if (widget == nullptr) {
                throw UnresolvedTargetError("input target not found in state " + state.state_id);
            }
            action.text = generate_input_text(*widget, spec, path, gateway_);
        }
        Transition transition;
        transition.action = action;
        transition.before = state;
        transition.action_rendered = render_action(action, state);
        StepResult result = device_.execute(action);
        transition.crashed = result.crashed;
        if (result.crashed) {
            transition.crash_record = result.crash_record;
        } else {
            transition.after = result.new_state;
        }
        if (config_.disable.transition_summary) {
            transition.summary = transition.action_rendered;
        } else {
            transition.summary =
                summarize_transition(action, transition.before, transition.after,
                                     transition.crashed, transition.crash_record, gateway_);
        }

        ExplorationPath child;
        child.path_id = next_path_id_++;
        child.transitions = path.transitions;
        child.transitions.push_back(std::move(transition));
        parents_[child.path_id] = path.path_id;
        if (!result.crashed) {
            pool_.put(child.path_id, device_.snapshot());
        }
        children.push_back(std::move(child));
    }

    const BugReport& report_;
    const SessionConfig& config_;
    LlmGateway& gateway_;
    BudgetedDevice device_;
    SnapshotPool pool_;
    std::map<uint64_t, uint64_t> parents_;
    uint64_t next_path_id_ = 0;
};

} // namespace

ReproductionResult reproduce(const BugReport& report, Device& device, LlmGateway& gateway,
                             const SessionConfig& config) {
    Clock::time_point started = Clock::now();
    LedgerSnapshot ledger_before = gateway.ledger();
    ReproductionResult result;
    int64_t executed = 0;
    try {
        Session session(report, device, gateway, config, started, executed);
        if (std::optional<SessionSuccess> success = session.run()) {
            result.metrics.outcome = SessionOutcome::Success;
            result.trace = std::move(success->trace);
            result.trace_summaries = std::move(success->summaries);
        } else {
            result.metrics.outcome = SessionOutcome::Exhausted;
        }
    } catch (const BudgetStop& stop) {
        result.metrics.outcome = stop.which;
    } catch (const Error& e) {
        result.metrics.outcome = SessionOutcome::Error;
        result.metrics.error_message = e.what();
    }
    result.metrics.executed_actions = executed;
    result.metrics.ledger = gateway.ledger() - ledger_before;
    result.metrics.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return result;
}

} // namespace uirepro
