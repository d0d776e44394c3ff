#include "uirepro/sim/sim_device.hpp"

#include "uirepro/errors.hpp"

#include <atomic>

namespace uirepro {

namespace {

uint64_t next_session_id() {
    static std::atomic<uint64_t> counter{1};
    return counter.fetch_add(1);
}

} // namespace

SimDevice::SimDevice(std::shared_ptr<const SimApp> app, std::string id_prefix)
    : app_(std::move(app)), id_prefix_(std::move(id_prefix)), session_(next_session_id()) {
    if (!app_) {
        throw Error("SimDevice requires a loaded app model");
    }
    config_.state_key = app_->initial_state;
}

UIState SimDevice::materialize() {
    const SimState& state = app_->state(config_.state_key);
    UIState out;
    out.state_id = id_prefix_ + "s" + std::to_string(next_state_id_++);
    out.activity_name = state.activity;
    out.hierarchy = state.hierarchy;
    out.visual_descriptor = state.visual;
    return out;
}

UIState SimDevice::reset() {
    config_ = SimConfig{};
    config_.state_key = app_->initial_state;
    return materialize();
}

StepResult SimDevice::execute(const UIAction& action) {
    SimStepOutcome outcome = sim_step(*app_, config_, action);
    StepResult result;
    // Materialize directly (capture_screen refuses while a crash is pending):
    // on a crash this is the screen the crash was observed on.
    result.new_state = materialize();
    result.crashed = outcome.crashed;
    if (outcome.crashed) {
        result.crash_record = outcome.crash_record;
    }
    return result;
}

SnapshotId SimDevice::snapshot() {
    uint64_t sequence = next_snapshot_id_++;
    snapshots_.emplace(sequence, config_);
    return SnapshotId{session_, sequence};
}

void SimDevice::rollback(const SnapshotId& snapshot) {
    if (snapshot.session != session_) {
        throw UnknownSnapshotError("snapshot belongs to another device session");
    }
    auto it = snapshots_.find(snapshot.sequence);
    if (it == snapshots_.end()) {
        throw UnknownSnapshotError("unknown snapshot #" + std::to_string(snapshot.sequence));
    }
    config_ = it->second;
}

UIState SimDevice::capture_screen() {
    if (config_.crashed) {
        throw SessionCrashedError("app '" + app_->app_name + "' has crashed; reset() first");
    }
    return materialize();
}

std::optional<std::string> SimDevice::crash_log() const {
    if (!config_.crashed) {
        return std::nullopt;
    }
    return config_.crash_record;
}

} // namespace uirepro
