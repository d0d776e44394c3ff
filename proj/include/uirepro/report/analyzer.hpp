#pragma once

#include "uirepro/llm/gateway.hpp"
#include "uirepro/report/bug_report.hpp"

#include <string>
#include <vector>

namespace uirepro {

// What the engine works from: the distilled reproduction steps and the
// observable symptoms, plus whether the fault is a crash. Both lists are
// non-empty by construction.
struct ReproductionSpecification {
    std::vector<std::string> steps;
    std::vector<std::string> symptoms;
    bool expects_crash = false;
};

// Canonical prompt rendering of a specification (numbered steps, bulleted
// symptoms, crash expectation line).
std::string render_specification(const ReproductionSpecification& spec);

// Distills `report` via a ReportAnalysis completion. Malformed output is
// re-asked up to 3 attempts in total; persistent failure raises
// UnparseableSpecificationError.
ReproductionSpecification analyze_report(const BugReport& report, LlmGateway& gateway);

// Fallback used when report analysis is disabled: the raw report becomes a
// single step, the symptom refers back to the report, and the crash
// expectation comes from a keyword scan of the report text.
ReproductionSpecification specification_from_raw_report(const BugReport& report);

} // namespace uirepro
