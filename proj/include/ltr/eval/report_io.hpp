#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ltr/eval/experiments.hpp"

namespace ltr::eval {

// Machine-readable summary keyed by (model, mask, segment, target).
nlohmann::json report_to_json(const std::vector<EvalReport>& reports,
                              const CrossTargetMatrix& cross_target,
                              const std::vector<AblationCell>& ablation,
                              const SegmentComparison& segments,
                              const std::vector<BaselineComparisonRow>& baseline,
                              const EvalOptions& options);

std::string render_report_text(const nlohmann::json& report);

// Grouped bar chart of the ablation grid (mask x model), SVG.
std::string render_ablation_svg(const std::vector<AblationCell>& cells);
void write_ablation_svg(const nlohmann::json& report, const std::string& path);

}  // namespace ltr::eval
