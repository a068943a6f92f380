#pragma once

#include <string>

#include "json.hpp"

#include "wrapfs/pipeline.hpp"

namespace wrapfs {

inline constexpr const char* kCsvHeader =
    "classifier,mode,accuracy,sensitivity,specificity,precision,f_score,kappa,mae,rmse,rae,n_selected,"
    "selected_features";

/// Metrics and costs rounded to 6 decimals; key order is fixed.
nlohmann::ordered_json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j);

std::string report_to_csv(const ExperimentReport& report);

/// Serialized report text in the requested format.
std::string render_report(const ExperimentReport& report, ReportFormat format);

/// Writes the report; throws IoError when the path cannot be written.
void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path);

}  // namespace wrapfs
