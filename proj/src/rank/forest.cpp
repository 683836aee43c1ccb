#include "ltr/rank/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ltr/rng.hpp"

namespace ltr::rank {

RandomForestResult rf_train(const RankData& data, const std::vector<int>& active_features,
                            const RandomForestConfig& config, std::uint64_t seed) {
  const std::size_t n = data.rows();
  if (n == 0) throw std::invalid_argument("rf_train: empty dataset");

  RandomForestResult result;
  const double t0 = data.targets[0];
  result.constant_target = (data.targets.array() == t0).all();

  BinnedDataset binned(data.features, active_features, config.tree.max_bins);
  VecD hess = VecD::Ones(static_cast<Eigen::Index>(n));
  auto rng = make_rng(seed);

  std::vector<double> oob_sum(n, 0.0);
  std::vector<int> oob_count(n, 0);
  std::vector<std::uint32_t> sample(n);
  std::vector<bool> in_bag(n);

  for (int t = 0; t < config.n_trees; ++t) {
    std::fill(in_bag.begin(), in_bag.end(), false);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = static_cast<std::size_t>(rng() % n);
      sample[i] = static_cast<std::uint32_t>(r);
      in_bag[r] = true;
    }
    std::sort(sample.begin(), sample.end());
    RegressionTree tree =
        fit_tree(binned, sample, data.targets, hess, config.tree, &rng, config.feature_fraction);
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_bag[i]) {
        oob_sum[i] += tree.predict(data.features.row(static_cast<Eigen::Index>(i)).data());
        oob_count[i] += 1;
      }
    }
    result.trees.push_back(std::move(tree));
  }

  double se = 0.0;
  std::size_t counted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (oob_count[i] == 0) continue;
    const double err = data.targets[static_cast<Eigen::Index>(i)] - oob_sum[i] / oob_count[i];
    se += err * err;
    ++counted;
  }
  result.oob_error = counted ? se / static_cast<double>(counted) : 0.0;
  return result;
}

GbmResult gbm_train(const RankData& data, const std::vector<int>& active_features,
                    const GbmConfig& config, std::uint64_t /*seed*/) {
  const std::size_t n = data.rows();
  if (n == 0) throw std::invalid_argument("gbm_train: empty dataset");

  GbmResult result;
  result.shrinkage = config.learning_rate;
  result.base_score = data.targets.mean();

  BinnedDataset binned(data.features, active_features, config.tree.max_bins);
  std::vector<std::uint32_t> all_rows(n);
  std::iota(all_rows.begin(), all_rows.end(), 0);
  VecD hess = VecD::Ones(static_cast<Eigen::Index>(n));

  VecD pred = VecD::Constant(static_cast<Eigen::Index>(n), result.base_score);
  VecD residual(static_cast<Eigen::Index>(n));
  for (int t = 0; t < config.n_trees; ++t) {
    residual = data.targets - pred;
    RegressionTree tree = fit_tree(binned, all_rows, residual, hess, config.tree);
    for (std::size_t i = 0; i < n; ++i) {
      pred[static_cast<Eigen::Index>(i)] +=
          config.learning_rate * tree.predict(data.features.row(static_cast<Eigen::Index>(i)).data());
    }
    result.trees.push_back(std::move(tree));
    result.train_loss.push_back((data.targets - pred).squaredNorm() / static_cast<double>(n));
  }
  return result;
}

}  // namespace ltr::rank
