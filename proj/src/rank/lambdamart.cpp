#include "ltr/rank/lambdamart.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ltr/rank/ranknet.hpp"
#include "ltr/rng.hpp"

namespace ltr::rank {

namespace {

// indices of the group's rows sorted by (score desc, product_id asc)
std::vector<std::size_t> sorted_by_score(const RankData& data, const RankData::Group& group,
                                         const std::vector<double>& scores) {
  std::vector<std::size_t> idx(group.end - group.begin);
  std::iota(idx.begin(), idx.end(), group.begin);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return data.product_ids[a] < data.product_ids[b];
  });
  return idx;
}

double group_idcg(const RankData& data, const RankData::Group& group, int k,
                  eval::GainKind gain) {
  std::vector<int> grades(data.grades.begin() + static_cast<std::ptrdiff_t>(group.begin),
                          data.grades.begin() + static_cast<std::ptrdiff_t>(group.end));
  return eval::idcg(std::move(grades), static_cast<std::size_t>(k), gain);
}

}  // namespace

void lambda_gradients(const RankData& data, const RankData::Group& group,
                      const std::vector<double>& scores, const LambdaMartConfig& config,
                      std::mt19937_64& rng, std::vector<double>& lambdas,
                      std::vector<double>& hessians) {
  const std::size_t n = group.end - group.begin;
  if (n < 2) return;
  const double max_dcg = group_idcg(data, group, config.k, config.gain);
  if (max_dcg <= 0.0) return;
  const double inv_max_dcg = 1.0 / max_dcg;

  const auto order = sorted_by_score(data, group, scores);
  std::vector<std::size_t> rank_of(n);  // row -> 0-based rank
  for (std::size_t r = 0; r < order.size(); ++r) rank_of[order[r] - group.begin] = r;

  auto add_pair = [&](std::size_t hi_row, std::size_t lo_row) {
    // hi_row has the larger grade
    const std::size_t rank_hi = rank_of[hi_row - group.begin];
    const std::size_t rank_lo = rank_of[lo_row - group.begin];
    // only pairs reaching into the top K move the metric
    if (rank_hi >= static_cast<std::size_t>(config.k) &&
        rank_lo >= static_cast<std::size_t>(config.k)) {
      return;
    }
    const double gain_gap =
        eval::gain(data.grades[hi_row], config.gain) - eval::gain(data.grades[lo_row], config.gain);
    const double disc_gap = std::abs(eval::position_discount(rank_hi + 1) -
                                     eval::position_discount(rank_lo + 1));
    const double delta_ndcg = gain_gap * disc_gap * inv_max_dcg;
    const double d = scores[hi_row] - scores[lo_row];
    const double rho = 1.0 / (1.0 + std::exp(d));  // sigma(-(s_hi - s_lo))
    const double lambda = delta_ndcg * rho;
    const double hess = std::max(delta_ndcg * rho * (1.0 - rho), 1e-16);
    lambdas[hi_row] += lambda;
    lambdas[lo_row] -= lambda;
    hessians[hi_row] += hess;
    hessians[lo_row] += hess;
  };

  const auto pairs = sample_pairs(data, group, config.max_pairs_per_group, rng);
  for (const RankPair& p : pairs) add_pair(p.better, p.worse);
}

LambdaMartResult lambdamart_train(const RankData& data, const std::vector<int>& active_features,
                                  const LambdaMartConfig& config, std::uint64_t seed) {
  if (data.rows() == 0) throw std::invalid_argument("lambdamart_train: empty dataset");
  LambdaMartResult result;
  result.shrinkage = config.learning_rate;

  BinnedDataset binned(data.features, active_features, config.tree.max_bins);
  std::vector<std::uint32_t> all_rows(data.rows());
  std::iota(all_rows.begin(), all_rows.end(), 0);

  std::vector<double> scores(data.rows(), 0.0);
  std::vector<double> lambdas(data.rows()), hessians(data.rows());
  VecD grad(static_cast<Eigen::Index>(data.rows())), hess(static_cast<Eigen::Index>(data.rows()));
  auto rng = make_rng(seed);

  // per-group IDCG for the optional train-NDCG trace
  std::vector<double> idcgs(data.groups.size());
  for (std::size_t g = 0; g < data.groups.size(); ++g) {
    idcgs[g] = group_idcg(data, data.groups[g], config.k, config.gain);
  }

  for (int it = 0; it < config.n_trees; ++it) {
    std::fill(lambdas.begin(), lambdas.end(), 0.0);
    std::fill(hessians.begin(), hessians.end(), 0.0);
    double max_abs_sum = 0.0;
    for (const auto& group : data.groups) {
      lambda_gradients(data, group, scores, config, rng, lambdas, hessians);
      double s = 0.0;
      for (std::size_t r = group.begin; r < group.end; ++r) s += lambdas[r];
      max_abs_sum = std::max(max_abs_sum, std::abs(s));
    }
    result.max_abs_lambda_sum.push_back(max_abs_sum);

    for (std::size_t r = 0; r < data.rows(); ++r) {
      grad[static_cast<Eigen::Index>(r)] = lambdas[r];
      hess[static_cast<Eigen::Index>(r)] = hessians[r];
    }
    RegressionTree tree = fit_tree(binned, all_rows, grad, hess, config.tree);
    for (std::size_t r = 0; r < data.rows(); ++r) {
      scores[r] += config.learning_rate *
                   tree.predict(data.features.row(static_cast<Eigen::Index>(r)).data());
    }
    result.trees.push_back(std::move(tree));

    if (config.record_train_ndcg) {
      double sum = 0.0;
      std::size_t counted = 0;
      for (std::size_t g = 0; g < data.groups.size(); ++g) {
        if (idcgs[g] <= 0.0) continue;
        const auto order = sorted_by_score(data, data.groups[g], scores);
        double dcg = 0.0;
        const std::size_t top = std::min<std::size_t>(order.size(), config.k);
        for (std::size_t r = 0; r < top; ++r) {
          dcg += eval::gain(data.grades[order[r]], config.gain) * eval::position_discount(r + 1);
        }
        sum += dcg / idcgs[g];
        ++counted;
      }
      result.train_ndcg.push_back(counted ? sum / static_cast<double>(counted) : 0.0);
    }
  }
  return result;
}

}  // namespace ltr::rank
