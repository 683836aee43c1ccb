#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ltr/rank/decision_tree.hpp"
#include "ltr/rank/ranknet.hpp"
#include "ltr/types.hpp"

namespace ltr::rank {

enum class ModelKind { RandomForest, Gbm, RankNet, LambdaMart, Baseline };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

// Trained ranker plus the metadata needed to apply it safely: feature
// mask, target, segment and the training seed/hyperparameters.
struct RankModel {
  ModelKind kind = ModelKind::Gbm;
  std::string mask = "YYYY";
  std::string target = "log_ctr";
  std::string segment = "all";
  std::uint64_t seed = 0;
  int feature_dim = 0;
  std::map<std::string, double> hyperparameters;

  // tree models; node feature ids index the full-width feature vector
  std::vector<RegressionTree> trees;
  double base_score = 0.0;
  double shrinkage = 1.0;
  bool average_trees = false;  // forest averages, boosting sums with shrinkage

  // ranknet consumes the active columns in order
  Mlp mlp;
  std::vector<int> active_features;

  // baseline lookup table
  std::map<ProductId, double> product_scores;

  double predict_row(const double* row, ProductId id) const;
  // prefix sums for staged-prediction checks; n_trees < 0 uses all trees
  double predict_row_trees(const double* row, std::int64_t n_trees) const;
  VecD predict(const RowMatD& features, const std::vector<ProductId>& ids) const;
};

void save_model(const RankModel& model, const std::string& path);
RankModel load_model(const std::string& path);
nlohmann::json model_to_json(const RankModel& model);
RankModel model_from_json(const nlohmann::json& j);

}  // namespace ltr::rank
