#pragma once

#include <cstdint>
#include <vector>

#include "ltr/eval/ndcg.hpp"
#include "ltr/rank/dataset.hpp"
#include "ltr/rank/decision_tree.hpp"

namespace ltr::rank {

struct LambdaMartConfig {
  int n_trees = 300;
  double learning_rate = 0.05;
  TreeConfig tree;
  int k = 48;  // NDCG truncation
  int max_pairs_per_group = 100;
  eval::GainKind gain = eval::GainKind::Exponential;
  bool record_train_ndcg = false;
};

struct LambdaMartResult {
  std::vector<RegressionTree> trees;
  double shrinkage = 0.05;
  // largest |sum of lambdas| over groups, one entry per boosting
  // iteration; pairwise pushes are equal-and-opposite so this stays at
  // numerical zero
  std::vector<double> max_abs_lambda_sum;
  std::vector<double> train_ndcg;  // filled when record_train_ndcg
};

// Boosted trees fit to lambda gradients; delta-NDCG uses eval's gain and
// discount at truncation K, sigma = 1. Groups with all grades tied
// contribute nothing.
LambdaMartResult lambdamart_train(const RankData& data, const std::vector<int>& active_features,
                                  const LambdaMartConfig& config, std::uint64_t seed);

// One group's lambdas/hessians for the current scores; exposed for the
// conservation and sign tests.
void lambda_gradients(const RankData& data, const RankData::Group& group,
                      const std::vector<double>& scores, const LambdaMartConfig& config,
                      std::mt19937_64& rng, std::vector<double>& lambdas,
                      std::vector<double>& hessians);

}  // namespace ltr::rank
