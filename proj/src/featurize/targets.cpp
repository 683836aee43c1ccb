#include "ltr/featurize/targets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltr::featurize {

TargetRow compute_targets(const corpus::QueryProductAggregate& agg, double epsilon) {
  if (agg.impressions <= 0) throw std::invalid_argument("compute_targets: impressions must be > 0");
  TargetRow r;
  r.impressions = agg.impressions;
  r.clicks = agg.clicks;
  r.carts = agg.carts;
  r.purchases = agg.purchases;
  r.revenue = agg.revenue;

  const double i = static_cast<double>(agg.impressions);
  r.ctr = static_cast<double>(agg.clicks) / i;
  r.conv = static_cast<double>(agg.carts) / i;
  r.rpi = agg.revenue / i;
  r.purchase_rate = static_cast<double>(agg.purchases) / i;
  if (agg.clicks > 0) {
    r.atcr = static_cast<double>(agg.carts) / static_cast<double>(agg.clicks);
  }

  auto logf = [epsilon](double x) { return std::log(std::max(x, epsilon)); };
  r.log_ctr = logf(r.ctr);
  r.log_conv = logf(r.conv);
  r.log_rpi = logf(r.rpi);
  if (r.atcr) r.log_atcr = logf(*r.atcr);
  return r;
}

std::optional<double> target_value(const TargetRow& row, const std::string& name) {
  if (name == "log_ctr") return row.log_ctr;
  if (name == "log_conv") return row.log_conv;
  if (name == "log_rpi") return row.log_rpi;
  if (name == "log_atcr") return row.log_atcr;
  if (name == "ctr") return row.ctr;
  if (name == "conv") return row.conv;
  if (name == "rpi") return row.rpi;
  if (name == "atcr") return row.atcr;
  if (name == "purchase_rate") return row.purchase_rate;
  throw std::invalid_argument("unknown target name: " + name);
}

std::vector<std::size_t> prune(const std::vector<std::int64_t>& impressions,
                               std::int64_t min_impressions, std::int64_t max_impressions) {
  if (min_impressions >= max_impressions) {
    throw std::invalid_argument("prune: min_impressions must be below max_impressions");
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < impressions.size(); ++i) {
    if (impressions[i] >= min_impressions && impressions[i] <= max_impressions) keep.push_back(i);
  }
  return keep;
}

std::int64_t impressions_percentile(std::vector<std::int64_t> impressions, double percentile) {
  if (impressions.empty()) return 0;
  std::sort(impressions.begin(), impressions.end());
  const double rank = percentile / 100.0 * static_cast<double>(impressions.size() - 1);
  const std::size_t idx = static_cast<std::size_t>(std::llround(rank));
  return impressions[std::min(idx, impressions.size() - 1)];
}

}  // namespace ltr::featurize
