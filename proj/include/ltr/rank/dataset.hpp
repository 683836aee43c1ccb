#pragma once

#include <string>
#include <vector>

#include "ltr/types.hpp"

namespace ltr::rank {

// Rows pooled across queries; each group is one query's contiguous span.
// Grades come from eval's binning of the training target.
struct RankData {
  RowMatD features;                     // n x d
  VecD targets;                         // regression target (log metric)
  std::vector<int> grades;              // per-row relevance grade
  std::vector<ProductId> product_ids;   // deterministic tie-breaking
  struct Group {
    std::string query;
    std::size_t begin = 0;
    std::size_t end = 0;  // half-open
  };
  std::vector<Group> groups;

  std::size_t rows() const { return static_cast<std::size_t>(features.rows()); }
};

// Stable ranking order: score descending, product_id ascending.
std::vector<std::size_t> ranking_order(const std::vector<double>& scores,
                                       const std::vector<ProductId>& ids);

inline std::vector<std::size_t> ranking_order(const VecD& scores,
                                              const std::vector<ProductId>& ids) {
  return ranking_order(std::vector<double>(scores.data(), scores.data() + scores.size()), ids);
}

}  // namespace ltr::rank
