#include "ltr/eval/experiments.hpp"

#include <stdexcept>

#include "ltr/rank/dataset.hpp"

namespace ltr::eval {

EvalReport evaluate_model(const rank::RankModel& model, const std::vector<TestGroup>& groups,
                          const std::string& metric, const EvalOptions& options,
                          const std::string& segment_filter) {
  EvalReport report;
  report.model_id = rank::to_string(model.kind) + "_" + model.mask + "_" + model.target + "_" +
                    model.segment;
  report.target = metric;
  report.segment = segment_filter;
  report.k = options.k;

  double sum = 0.0;
  for (const TestGroup& g : groups) {
    if (segment_filter != "all" && g.segment != segment_filter) continue;
    auto mit = g.metrics.find(metric);
    if (mit == g.metrics.end()) throw std::invalid_argument("test group lacks metric " + metric);
    const auto grades_opt = bin_grades(mit->second, options.bins);
    if (!grades_opt) {
      report.excluded += 1;
      continue;
    }
    const VecD scores = model.predict(g.features, g.products);
    const auto order = rank::ranking_order(scores, g.products);
    std::vector<int> ordered(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) ordered[i] = (*grades_opt)[order[i]];
    const auto value = ndcg(ordered, options.k, options.gain);
    if (!value) {
      report.excluded += 1;
      continue;
    }
    report.per_query.push_back({g.query, *value});
    sum += *value;
    report.evaluated += 1;
  }
  report.mean_ndcg = report.evaluated ? sum / static_cast<double>(report.evaluated) : 0.0;
  return report;
}

CrossTargetMatrix cross_target_matrix(const std::map<std::string, rank::RankModel>& models_by_target,
                                      const std::vector<TestGroup>& groups,
                                      const std::vector<std::string>& targets,
                                      const EvalOptions& options) {
  CrossTargetMatrix matrix;
  for (const std::string& train_target : targets) {
    auto it = models_by_target.find(train_target);
    if (it == models_by_target.end()) {
      throw std::invalid_argument("cross_target_matrix: missing model for " + train_target);
    }
    for (const std::string& test_target : targets) {
      matrix[train_target][test_target] =
          evaluate_model(it->second, groups, test_target, options).mean_ndcg;
    }
  }
  return matrix;
}

std::vector<AblationCell> ablation_grid(const std::vector<const rank::RankModel*>& models,
                                        const std::vector<TestGroup>& groups,
                                        const std::string& metric, const EvalOptions& options) {
  std::vector<AblationCell> cells;
  for (const rank::RankModel* m : models) {
    AblationCell cell;
    cell.kind = rank::to_string(m->kind);
    cell.mask = m->mask;
    cell.ndcg = evaluate_model(*m, groups, metric, options).mean_ndcg;
    cells.push_back(std::move(cell));
  }
  return cells;
}

SegmentComparison segment_comparison(const rank::RankModel& combined,
                                     const rank::RankModel& broad_model,
                                     const rank::RankModel& narrow_model,
                                     const std::vector<TestGroup>& groups,
                                     const std::string& metric, const EvalOptions& options) {
  SegmentComparison table;
  for (const char* segment : {"broad", "narrow"}) {
    table["combined"][segment] = evaluate_model(combined, groups, metric, options, segment).mean_ndcg;
    table["broad_model"][segment] =
        evaluate_model(broad_model, groups, metric, options, segment).mean_ndcg;
    table["narrow_model"][segment] =
        evaluate_model(narrow_model, groups, metric, options, segment).mean_ndcg;
  }
  return table;
}

std::vector<BaselineComparisonRow> baseline_comparison(const rank::RankModel& baseline,
                                                       const rank::RankModel& letor_broad,
                                                       const rank::RankModel& letor_narrow,
                                                       const std::vector<TestGroup>& groups,
                                                       const std::string& metric,
                                                       const EvalOptions& options) {
  std::vector<BaselineComparisonRow> rows;
  for (const char* segment : {"broad", "narrow"}) {
    const rank::RankModel& letor =
        std::string(segment) == "broad" ? letor_broad : letor_narrow;
    BaselineComparisonRow row;
    row.segment = segment;
    row.baseline_ndcg = evaluate_model(baseline, groups, metric, options, segment).mean_ndcg;
    row.letor_ndcg = evaluate_model(letor, groups, metric, options, segment).mean_ndcg;
    row.relative_improvement =
        row.baseline_ndcg > 0.0 ? (row.letor_ndcg - row.baseline_ndcg) / row.baseline_ndcg : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ltr::eval
