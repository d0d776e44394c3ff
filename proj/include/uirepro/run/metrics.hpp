#pragma once

#include "uirepro/run/session.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace uirepro {

// Fraction of confirmed reproductions. Throws EmptyInputError on no input.
double compute_sr(const std::vector<bool>& confirmed);

// JSON form of one action, e.g. {"kind":"input_text","target":"n4","text":"test2"}.
nlohmann::json action_to_json(const UIAction& action);

// The outcome document written by `reproduce` runs (see docs/file-formats.md).
// `normalize` zeroes wall-clock time so outputs byte-compare across runs.
nlohmann::json result_to_json(const ReproductionResult& result, bool normalize);

// One CSV row: report_id,outcome,actions,tokens_k,cost,minutes[,variant].
// tokens_k and minutes use three decimals; cost uses nine. `normalize`
// zeroes the minutes column.
std::string csv_row(const std::string& report_id, const SessionMetrics& metrics, bool normalize,
                    const std::string& variant = "");

extern const char* const kCsvHeader;        // without variant column
extern const char* const kCsvHeaderVariant; // with variant column

// Final summary line: "SR,0.9000".
std::string csv_sr_line(double sr);

} // namespace uirepro
