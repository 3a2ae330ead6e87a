#ifndef HKST_REPORT_JSON_HPP
#define HKST_REPORT_JSON_HPP

#include <string>

#include <json.hpp>

#include "hkst/enhance.hpp"
#include "hkst/metrics.hpp"
#include "hkst/pipeline.hpp"

namespace hkst {

nlohmann::json to_json(const MomentSummary& moments);
nlohmann::json to_json(const QualityReport& quality);
nlohmann::json to_json(const TransferMap& map);
nlohmann::json to_json(const PipelineConfig& config);
nlohmann::json to_json(const PipelineReport& report);
nlohmann::json to_json(const GradeComparison& comparison);

/// Only the fields compare_grades needs are restored.
PipelineReport pipeline_report_from_json(const nlohmann::json& json);

/// Two-space indented, trailing newline.
std::string dump_report(const nlohmann::json& json);

}  // namespace hkst

#endif  // HKST_REPORT_JSON_HPP
