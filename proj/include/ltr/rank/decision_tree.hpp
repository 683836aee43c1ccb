#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ltr/types.hpp"

namespace ltr::rank {

struct TreeNode {
  int feature = -1;  // original column; -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

struct RegressionTree {
  std::vector<TreeNode> nodes;

  double predict(const double* row) const {
    int n = 0;
    while (nodes[n].feature >= 0) {
      n = row[nodes[n].feature] <= nodes[n].threshold ? nodes[n].left : nodes[n].right;
    }
    return nodes[n].value;
  }
  double predict(VecRef row) const { return predict(row.data()); }
};

struct TreeConfig {
  int max_depth = 6;
  int min_samples_leaf = 20;
  int max_bins = 64;
  double ridge = 1e-6;    // added to hessian sums in gains and leaf values
  double min_gain = 1e-12;
};

// Quantile-binned feature codes shared by every tree of a training run.
// Split thresholds are real feature values, so prediction works on raw
// rows with no binning step.
class BinnedDataset {
 public:
  BinnedDataset(const RowMatD& features, std::vector<int> active_features, int max_bins);

  std::size_t rows() const { return rows_; }
  std::size_t slots() const { return active_.size(); }
  int original_feature(std::size_t slot) const { return active_[slot]; }
  int bin_count(std::size_t slot) const { return static_cast<int>(edges_[slot].size()) + 1; }
  double threshold(std::size_t slot, int bin) const { return edges_[slot][bin]; }
  const std::uint8_t* row_codes(std::size_t row) const { return &codes_[row * slots()]; }

 private:
  std::size_t rows_ = 0;
  std::vector<int> active_;
  std::vector<std::vector<double>> edges_;  // per slot, ascending thresholds
  std::vector<std::uint8_t> codes_;         // row-major, rows x slots
};

// Second-order fit: leaf value = sum(g) / (sum(h) + ridge); split gain is
// the usual G^2/H improvement. Least squares is the g = residual,
// h = 1 special case. `feature_fraction` < 1 samples slots per node.
RegressionTree fit_tree(const BinnedDataset& data, const std::vector<std::uint32_t>& row_set,
                        const VecD& grad, const VecD& hess, const TreeConfig& config,
                        std::mt19937_64* rng = nullptr, double feature_fraction = 1.0);

}  // namespace ltr::rank
