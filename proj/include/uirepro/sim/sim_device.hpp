#pragma once

#include "uirepro/sim/app_model.hpp"
#include "uirepro/sim/device.hpp"

#include <map>
#include <memory>
#include <string>

namespace uirepro {

// Deterministic in-memory Device backed by a SimApp model. Snapshots are
// value copies of the simulator configuration, so rollback is exact and
// restores variables and pending-crash status alike.
class SimDevice : public Device {
public:
    // `id_prefix` is prepended to generated state ids ("s1", "s2", ...),
    // letting callers namespace observations from different sessions.
    explicit SimDevice(std::shared_ptr<const SimApp> app, std::string id_prefix = "");

    UIState reset() override;
    StepResult execute(const UIAction& action) override;
    SnapshotId snapshot() override;
    void rollback(const SnapshotId& snapshot) override;
    UIState capture_screen() override;
    std::optional<std::string> crash_log() const override;

    // Simulator introspection for tests; not part of the Device contract.
    const SimConfig& sim_config() const { return config_; }
    const SimApp& app() const { return *app_; }

private:
    UIState materialize();

    std::shared_ptr<const SimApp> app_;
    std::string id_prefix_;
    SimConfig config_;
    uint64_t session_;
    uint64_t next_state_id_ = 1;
    uint64_t next_snapshot_id_ = 1;
    std::map<uint64_t, SimConfig> snapshots_;
};

} // namespace uirepro
