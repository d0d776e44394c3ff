#include "uirepro/report/analyzer.hpp"

#include "uirepro/errors.hpp"
#include "uirepro/llm/envelopes.hpp"

#include <algorithm>
#include <cctype>

namespace uirepro {

using nlohmann::json;

std::string render_specification(const ReproductionSpecification& spec) {
    std::string out = "Steps to reproduce:";
    for (size_t i = 0; i < spec.steps.size(); ++i) {
        out += "\n" + std::to_string(i + 1) + ". " + spec.steps[i];
    }
    out += "\nExpected faulty behaviour:";
    for (const std::string& symptom : spec.symptoms) {
        out += "\n- " + symptom;
    }
    out += spec.expects_crash ? "\nThe app is expected to crash." : "\nThe app is not expected to crash.";
    return out;
}

namespace {

// nullopt on success, otherwise what is wrong (fed back to the model).
std::optional<std::string> parse_specification(const std::string& content,
                                               ReproductionSpecification& out) {
    std::optional<json> doc = extract_json(content);
    if (!doc || !doc->is_object()) {
        return "the reply did not contain a JSON object";
    }
    if (!doc->contains("steps") || !doc->at("steps").is_array() || doc->at("steps").empty()) {
        return "\"steps\" must be a non-empty array of strings";
    }
    if (!doc->contains("symptoms") || !doc->at("symptoms").is_array() ||
        doc->at("symptoms").empty()) {
        return "\"symptoms\" must be a non-empty array of strings";
    }
    if (!doc->contains("expects_crash") || !doc->at("expects_crash").is_boolean()) {
        return "\"expects_crash\" must be a boolean";
    }
    ReproductionSpecification spec;
    for (const json& step : doc->at("steps")) {
        if (!step.is_string() || trim(step.get<std::string>()).empty()) {
            return "\"steps\" must contain only non-empty strings";
        }
        spec.steps.push_back(trim(step.get<std::string>()));
    }
    for (const json& symptom : doc->at("symptoms")) {
        if (!symptom.is_string() || trim(symptom.get<std::string>()).empty()) {
            return "\"symptoms\" must contain only non-empty strings";
        }
        spec.symptoms.push_back(trim(symptom.get<std::string>()));
    }
    spec.expects_crash = doc->at("expects_crash").get<bool>();
    out = std::move(spec);
    return std::nullopt;
}

} // namespace

ReproductionSpecification analyze_report(const BugReport& report, LlmGateway& gateway) {
    PromptContext ctx;
    ctx.role = PromptRole::ReportAnalysis;
    ctx.attributes["bug report"] = render_report(report);

    ReproductionSpecification spec;
    ValidatedReply reply = gateway.complete_validated(
        ctx, [&spec](const std::string& content) { return parse_specification(content, spec); });
    if (!reply.ok) {
        throw UnparseableSpecificationError("report analysis for '" + report.report_id +
                                            "' kept producing malformed output: " + reply.error);
    }
    return spec;
}

ReproductionSpecification specification_from_raw_report(const BugReport& report) {
    ReproductionSpecification spec;
    spec.steps.push_back("Follow the bug report as written: " + render_report(report));
    spec.symptoms.push_back("the faulty behaviour described in the bug report");
    std::string lowered = render_report(report);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const char* keyword : {"crash", "exception", "force close", "force-close"}) {
        if (lowered.find(keyword) != std::string::npos) {
            spec.expects_crash = true;
            break;
        }
    }
    return spec;
}

} // namespace uirepro
