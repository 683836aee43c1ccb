#include "ltr/rank/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ltr::rank {

void BaselineWeights::validate() const {
  if (ctr < 0 || revenue < 0 || quantity < 0 || inventory < 0) {
    throw std::invalid_argument("baseline weights must be non-negative");
  }
  if (std::abs(ctr + revenue + quantity + inventory - 1.0) > 1e-9) {
    throw std::invalid_argument("baseline weights must sum to 1");
  }
}

std::map<ProductId, ProductWindowStats> product_window_stats(
    const std::vector<corpus::SessionLog>& logs, int window_days) {
  int max_day = 0;
  for (const corpus::SessionLog& s : logs) max_day = std::max(max_day, s.day);
  const int first_day = max_day - window_days + 1;

  std::map<ProductId, ProductWindowStats> stats;
  for (const corpus::SessionLog& s : logs) {
    if (s.day < first_day) continue;
    for (const corpus::ImpressionEvent& e : s.events) {
      ProductWindowStats& st = stats[e.product_id];
      st.impressions += 1;
      st.clicks += e.clicked ? 1 : 0;
      st.quantity += e.purchased ? 1 : 0;
      st.revenue += e.revenue;
    }
  }
  return stats;
}

BaselineScorer::BaselineScorer(const std::vector<corpus::SessionLog>& logs,
                               const corpus::Catalogue& catalogue, int window_days,
                               const BaselineWeights& weights) {
  weights.validate();
  const auto stats = product_window_stats(logs, window_days);

  struct Raw {
    double ctr = 0, revenue = 0, quantity = 0, inventory = 0;
  };
  std::map<ProductId, Raw> raw;
  Raw lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
         std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Raw hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
         -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const corpus::Product& p : catalogue.products()) {
    Raw r;
    if (auto it = stats.find(p.product_id); it != stats.end() && it->second.impressions > 0) {
      r.ctr = static_cast<double>(it->second.clicks) / static_cast<double>(it->second.impressions);
      r.revenue = it->second.revenue;
      r.quantity = static_cast<double>(it->second.quantity);
    }
    r.inventory = static_cast<double>(p.inventory);
    lo.ctr = std::min(lo.ctr, r.ctr);
    hi.ctr = std::max(hi.ctr, r.ctr);
    lo.revenue = std::min(lo.revenue, r.revenue);
    hi.revenue = std::max(hi.revenue, r.revenue);
    lo.quantity = std::min(lo.quantity, r.quantity);
    hi.quantity = std::max(hi.quantity, r.quantity);
    lo.inventory = std::min(lo.inventory, r.inventory);
    hi.inventory = std::max(hi.inventory, r.inventory);
    raw[p.product_id] = r;
  }

  auto norm = [](double v, double lo, double hi) { return hi > lo ? (v - lo) / (hi - lo) : 0.0; };
  for (const auto& [id, r] : raw) {
    scores_[id] = weights.ctr * norm(r.ctr, lo.ctr, hi.ctr) +
                  weights.revenue * norm(r.revenue, lo.revenue, hi.revenue) +
                  weights.quantity * norm(r.quantity, lo.quantity, hi.quantity) +
                  weights.inventory * norm(r.inventory, lo.inventory, hi.inventory);
  }
}

double BaselineScorer::score(ProductId id) const {
  auto it = scores_.find(id);
  return it == scores_.end() ? 0.0 : it->second;
}

}  // namespace ltr::rank
