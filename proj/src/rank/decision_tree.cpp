#include "ltr/rank/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ltr::rank {

BinnedDataset::BinnedDataset(const RowMatD& features, std::vector<int> active_features, int max_bins)
    : rows_(static_cast<std::size_t>(features.rows())), active_(std::move(active_features)) {
  if (max_bins < 2 || max_bins > 256) throw std::invalid_argument("max_bins must be in [2,256]");
  if (active_.empty()) throw std::invalid_argument("BinnedDataset: no active features");
  edges_.resize(active_.size());
  codes_.assign(rows_ * active_.size(), 0);

  std::vector<double> sorted;
  for (std::size_t slot = 0; slot < active_.size(); ++slot) {
    const int col = active_[slot];
    sorted.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) sorted[r] = features(static_cast<Eigen::Index>(r), col);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    auto& edges = edges_[slot];
    if (sorted.size() > 1) {
      if (static_cast<int>(sorted.size()) <= max_bins) {
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
          edges.push_back(0.5 * (sorted[i] + sorted[i + 1]));
        }
      } else {
        for (int e = 1; e < max_bins; ++e) {
          const std::size_t idx = e * sorted.size() / max_bins;
          const double cut = 0.5 * (sorted[idx - 1] + sorted[idx]);
          if (edges.empty() || cut > edges.back()) edges.push_back(cut);
        }
      }
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      const double x = features(static_cast<Eigen::Index>(r), col);
      const auto it = std::upper_bound(edges.begin(), edges.end(), x);
      codes_[r * active_.size() + slot] = static_cast<std::uint8_t>(it - edges.begin());
    }
  }
}

namespace {

struct BinStat {
  double g = 0.0;
  double h = 0.0;
  std::int32_t n = 0;
};

struct NodeRange {
  int node = 0;           // index into tree.nodes
  std::size_t begin = 0;  // range in the row-index array
  std::size_t end = 0;
  double sum_g = 0.0;
  double sum_h = 0.0;
};

double leaf_objective(double g, double h, double ridge) { return g * g / (h + ridge); }

}  // namespace

RegressionTree fit_tree(const BinnedDataset& data, const std::vector<std::uint32_t>& row_set,
                        const VecD& grad, const VecD& hess, const TreeConfig& config,
                        std::mt19937_64* rng, double feature_fraction) {
  const std::size_t n_slots = data.slots();
  RegressionTree tree;
  if (row_set.empty()) {
    tree.nodes.push_back(TreeNode{});
    return tree;
  }

  std::vector<std::uint32_t> rows = row_set;
  double root_g = 0.0, root_h = 0.0;
  for (std::uint32_t r : rows) {
    root_g += grad[r];
    root_h += hess[r];
  }
  tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, root_g / (root_h + config.ridge)});

  std::vector<NodeRange> level{{0, 0, rows.size(), root_g, root_h}};
  std::vector<BinStat> hist;
  std::vector<std::size_t> slot_pick(n_slots);
  std::iota(slot_pick.begin(), slot_pick.end(), 0);
  std::size_t n_pick = n_slots;
  if (feature_fraction < 1.0) {
    n_pick = std::max<std::size_t>(1, static_cast<std::size_t>(feature_fraction * n_slots + 0.5));
  }

  for (int depth = 0; depth < config.max_depth && !level.empty(); ++depth) {
    std::vector<NodeRange> next;
    for (NodeRange& nr : level) {
      const std::size_t count = nr.end - nr.begin;
      if (count < 2 * static_cast<std::size_t>(config.min_samples_leaf)) continue;

      // per-node feature subsample (random forest style)
      if (n_pick < n_slots && rng) {
        for (std::size_t i = 0; i < n_pick; ++i) {
          const std::size_t j = i + (*rng)() % (n_slots - i);
          std::swap(slot_pick[i], slot_pick[j]);
        }
      }

      // histograms over this node's rows, all picked slots in one pass
      hist.assign(n_pick * 256, BinStat{});
      for (std::size_t i = nr.begin; i < nr.end; ++i) {
        const std::uint32_t r = rows[i];
        const std::uint8_t* codes = data.row_codes(r);
        const double g = grad[r], h = hess[r];
        for (std::size_t s = 0; s < n_pick; ++s) {
          BinStat& b = hist[s * 256 + codes[slot_pick[s]]];
          b.g += g;
          b.h += h;
          b.n += 1;
        }
      }

      const double parent_obj = leaf_objective(nr.sum_g, nr.sum_h, config.ridge);
      double best_gain = config.min_gain;
      int best_slot = -1, best_bin = -1;
      double best_lg = 0, best_lh = 0;
      std::int64_t best_ln = 0;
      for (std::size_t s = 0; s < n_pick; ++s) {
        const std::size_t slot = slot_pick[s];
        const int nbins = data.bin_count(slot);
        double lg = 0, lh = 0;
        std::int64_t ln = 0;
        for (int bin = 0; bin + 1 < nbins; ++bin) {
          const BinStat& b = hist[s * 256 + bin];
          lg += b.g;
          lh += b.h;
          ln += b.n;
          if (ln < config.min_samples_leaf) continue;
          const std::int64_t rn = static_cast<std::int64_t>(count) - ln;
          if (rn < config.min_samples_leaf) break;
          const double gain = leaf_objective(lg, lh, config.ridge) +
                              leaf_objective(nr.sum_g - lg, nr.sum_h - lh, config.ridge) -
                              parent_obj;
          if (gain > best_gain) {
            best_gain = gain;
            best_slot = static_cast<int>(slot);
            best_bin = bin;
            best_lg = lg;
            best_lh = lh;
            best_ln = ln;
          }
        }
      }
      if (best_slot < 0) continue;

      // stable partition keeps row order deterministic
      std::vector<std::uint32_t> right_rows;
      right_rows.reserve(count - static_cast<std::size_t>(best_ln));
      std::size_t w = nr.begin;
      for (std::size_t i = nr.begin; i < nr.end; ++i) {
        const std::uint32_t r = rows[i];
        if (data.row_codes(r)[best_slot] <= best_bin) {
          rows[w++] = r;
        } else {
          right_rows.push_back(r);
        }
      }
      std::copy(right_rows.begin(), right_rows.end(), rows.begin() + static_cast<std::ptrdiff_t>(w));

      const int left_id = static_cast<int>(tree.nodes.size());
      const int right_id = left_id + 1;
      {
        // reference dies before push_back can reallocate the node vector
        TreeNode& node = tree.nodes[nr.node];
        node.feature = data.original_feature(static_cast<std::size_t>(best_slot));
        node.threshold = data.threshold(static_cast<std::size_t>(best_slot), best_bin);
        node.left = left_id;
        node.right = right_id;
      }
      const double rg = nr.sum_g - best_lg, rh = nr.sum_h - best_lh;
      tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, best_lg / (best_lh + config.ridge)});
      tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, rg / (rh + config.ridge)});
      next.push_back({left_id, nr.begin, w, best_lg, best_lh});
      next.push_back({right_id, w, nr.end, rg, rh});
    }
    level = std::move(next);
  }
  return tree;
}

}  // namespace ltr::rank
