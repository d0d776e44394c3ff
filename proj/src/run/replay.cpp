#include "uirepro/run/replay.hpp"

#include "uirepro/errors.hpp"

namespace uirepro {

VerificationResult replay(const std::vector<UIAction>& trace, Device& device,
                          const std::optional<std::string>& expected_symptom) {
    VerificationResult result;
    device.reset();
    for (size_t i = 0; i < trace.size(); ++i) {
        StepResult step;
        try {
            step = device.execute(trace[i]);
        } catch (const UnresolvedTargetError& e) {
            result.confirmed = false;
            result.evidence =
                "step " + std::to_string(i + 1) + " could not be executed: " + e.what();
            return result;
        }
        if (step.crashed) {
            result.confirmed = true;
            result.evidence = "crash observed at step " + std::to_string(i + 1) + ": " +
                              step.crash_record.value_or("(no crash log captured)");
            return result;
        }
    }
    if (expected_symptom && !expected_symptom->empty()) {
        UIState final_state = device.capture_screen();
        if (final_state.visual_descriptor.find(*expected_symptom) != std::string::npos) {
            result.confirmed = true;
            result.evidence = "final screen shows the symptom: " + *expected_symptom;
        } else {
            result.confirmed = false;
            result.evidence = "final screen does not show the symptom: " + *expected_symptom;
        }
        return result;
    }
    result.confirmed = false;
    result.evidence = "no crash observed and no expected symptom was given";
    return result;
}

} // namespace uirepro
