#pragma once

#include <json.hpp>

#include "xiboot/calibration.hpp"
#include "xiboot/m_selection.hpp"
#include "xiboot/models.hpp"
#include "xiboot/study.hpp"

namespace xiboot::cli {

nlohmann::ordered_json model_to_json(const ModelSpec& model);
ModelSpec model_from_json(const nlohmann::json& j);

nlohmann::ordered_json rule_to_json(const MSelectionRule& rule);

// Candidate sizes, chosen index/m, distance matrix (null where a pair was
// not computed) and the admissibility flag; atoms are omitted.
nlohmann::ordered_json trace_to_json(const SelectionTrace& trace);

nlohmann::ordered_json calibration_to_json(const CalibrationResult& truth);
CalibrationResult calibration_from_json(const nlohmann::json& j);

}  // namespace xiboot::cli
