#pragma once

#include "uirepro/ui/actions.hpp"
#include "uirepro/ui/widget.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace uirepro {

// Opaque rollback token. Tokens are only valid on the device instance that
// issued them; `session` makes stale tokens detectable.
struct SnapshotId {
    uint64_t session = 0;
    uint64_t sequence = 0;

    bool operator==(const SnapshotId&) const = default;
};

// Result of executing one action.
struct StepResult {
    // Observation after the action. When the action crashed the app this is
    // the screen the crash was observed on; rely on `crashed`/`crash_record`
    // to tell the difference.
    UIState new_state;
    bool crashed = false;
    std::optional<std::string> crash_record;
};

// Abstraction over a device/emulator running the app under test. The engine
// only ever talks to this interface; the bundled simulator implements it and
// a real-device adapter can be slotted in without touching the engine.
//
// Common error contract: execute/capture_screen throw SessionCrashedError
// while a crash is pending, execute throws UnresolvedTargetError for unknown
// targets, rollback throws UnknownSnapshotError for foreign/unknown tokens.
class Device {
public:
    virtual ~Device() = default;

    // Restarts the app: clears any pending crash and returns the initial
    // observation. Deterministic for the simulator.
    virtual UIState reset() = 0;

    // Performs `action` on the current screen and observes the outcome.
    virtual StepResult execute(const UIAction& action) = 0;

    // Captures the full current app state for later rollback. Snapshots stay
    // valid for the lifetime of the device instance.
    virtual SnapshotId snapshot() = 0;

    // Restores a previously captured state, including any pending crash.
    virtual void rollback(const SnapshotId& snapshot) = 0;

    // Observes the current screen without acting on it.
    virtual UIState capture_screen() = 0;

    // The crash record of the pending crash, if any.
    virtual std::optional<std::string> crash_log() const = 0;
};

} // namespace uirepro
