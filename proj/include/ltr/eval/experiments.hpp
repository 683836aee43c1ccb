#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ltr/eval/grades.hpp"
#include "ltr/eval/ndcg.hpp"
#include "ltr/rank/model.hpp"
#include "ltr/types.hpp"

namespace ltr::eval {

// One test query's candidate list with realized metrics for grading.
struct TestGroup {
  std::string query;
  std::string segment;  // broad|narrow
  std::vector<ProductId> products;
  RowMatD features;  // full-width rows, one per product
  // target name (ctr/atcr/conv/rpi) -> per-product realized value;
  // products without data carry 0 and grade 0
  std::map<std::string, std::vector<double>> metrics;
};

struct EvalOptions {
  std::size_t k = 48;
  int bins = 5;
  GainKind gain = GainKind::Exponential;
};

struct EvalReport {
  std::string model_id;
  std::string target;   // grading metric
  std::string segment;  // "all" or the filter applied
  std::size_t k = 48;
  double mean_ndcg = 0.0;
  std::size_t evaluated = 0;
  std::size_t excluded = 0;  // IDCG == 0 queries
  std::vector<std::pair<std::string, double>> per_query;
};

EvalReport evaluate_model(const rank::RankModel& model, const std::vector<TestGroup>& groups,
                          const std::string& metric, const EvalOptions& options,
                          const std::string& segment_filter = "all");

// train target -> (test target -> mean NDCG)
using CrossTargetMatrix = std::map<std::string, std::map<std::string, double>>;
CrossTargetMatrix cross_target_matrix(const std::map<std::string, rank::RankModel>& models_by_target,
                                      const std::vector<TestGroup>& groups,
                                      const std::vector<std::string>& targets,
                                      const EvalOptions& options);

// (model kind, mask code) -> mean NDCG under the given metric
struct AblationCell {
  std::string kind;
  std::string mask;
  double ndcg = 0.0;
};
std::vector<AblationCell> ablation_grid(const std::vector<const rank::RankModel*>& models,
                                        const std::vector<TestGroup>& groups,
                                        const std::string& metric, const EvalOptions& options);

// model name -> (segment -> NDCG); rows combined/broad-only/narrow-only
using SegmentComparison = std::map<std::string, std::map<std::string, double>>;
SegmentComparison segment_comparison(const rank::RankModel& combined,
                                     const rank::RankModel& broad_model,
                                     const rank::RankModel& narrow_model,
                                     const std::vector<TestGroup>& groups,
                                     const std::string& metric, const EvalOptions& options);

struct BaselineComparisonRow {
  std::string segment;
  double baseline_ndcg = 0.0;
  double letor_ndcg = 0.0;
  double relative_improvement = 0.0;  // (letor - baseline) / baseline
};
std::vector<BaselineComparisonRow> baseline_comparison(const rank::RankModel& baseline,
                                                       const rank::RankModel& letor_broad,
                                                       const rank::RankModel& letor_narrow,
                                                       const std::vector<TestGroup>& groups,
                                                       const std::string& metric,
                                                       const EvalOptions& options);

}  // namespace ltr::eval
