#pragma once

#include <cstdint>
#include <vector>

#include "ltr/rank/dataset.hpp"
#include "ltr/rank/decision_tree.hpp"

namespace ltr::rank {

struct RandomForestConfig {
  int n_trees = 200;
  TreeConfig tree;
  double feature_fraction = 0.333;  // per-node subsample
  bool degenerate_target_warning = false;  // set by training when target is constant
};

struct RandomForestResult {
  std::vector<RegressionTree> trees;  // prediction = mean of tree outputs
  double oob_error = 0.0;             // MSE over rows with out-of-bag votes
  bool constant_target = false;
};

// Bagged variance-reduction regression trees on the pooled rows.
RandomForestResult rf_train(const RankData& data, const std::vector<int>& active_features,
                            const RandomForestConfig& config, std::uint64_t seed);

struct GbmConfig {
  int n_trees = 300;
  double learning_rate = 0.05;
  TreeConfig tree;
};

struct GbmResult {
  std::vector<RegressionTree> trees;
  double base_score = 0.0;  // initial constant (target mean)
  double shrinkage = 0.05;
  std::vector<double> train_loss;  // MSE after each iteration, non-increasing
};

// Least-squares gradient boosting on the regression target.
GbmResult gbm_train(const RankData& data, const std::vector<int>& active_features,
                    const GbmConfig& config, std::uint64_t seed);

}  // namespace ltr::rank
