#pragma once

#include <map>

#include "ltr/corpus/catalogue.hpp"
#include "ltr/corpus/sessions.hpp"
#include "ltr/types.hpp"

namespace ltr::rank {

// Non-negative, must sum to 1.
struct BaselineWeights {
  double ctr = 0.35;
  double revenue = 0.3;
  double quantity = 0.2;
  double inventory = 0.15;

  void validate() const;
};

// Product-level trailing-window performance.
struct ProductWindowStats {
  std::int64_t impressions = 0;
  std::int64_t clicks = 0;
  std::int64_t quantity = 0;  // units purchased
  double revenue = 0.0;
};

std::map<ProductId, ProductWindowStats> product_window_stats(
    const std::vector<corpus::SessionLog>& logs, int window_days);

// Global popularity score: weighted sum of min-max normalized CTR,
// revenue, quantity and inventory over the trailing window. Products
// with no window data score on inventory alone.
class BaselineScorer {
 public:
  BaselineScorer() = default;
  BaselineScorer(const std::vector<corpus::SessionLog>& logs, const corpus::Catalogue& catalogue,
                 int window_days = 14, const BaselineWeights& weights = {});

  double score(ProductId id) const;  // 0 for unknown products
  const std::map<ProductId, double>& scores() const { return scores_; }

 private:
  std::map<ProductId, double> scores_;
};

}  // namespace ltr::rank
