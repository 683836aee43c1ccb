#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltr/corpus/sessions.hpp"

namespace ltr::featurize {

// Per-row targets. conv follows the printed definition carts/impressions;
// the purchase-based ratio is exposed separately as purchase_rate.
struct TargetRow {
  std::int64_t impressions = 0;  // I
  std::int64_t clicks = 0;       // C
  std::int64_t carts = 0;        // B
  std::int64_t purchases = 0;    // Q
  double revenue = 0.0;          // R

  double ctr = 0.0;
  std::optional<double> atcr;  // carts/clicks; undefined when C == 0
  double conv = 0.0;           // carts/impressions
  double rpi = 0.0;
  double purchase_rate = 0.0;  // purchases/impressions

  double log_ctr = 0.0;
  std::optional<double> log_atcr;
  double log_conv = 0.0;
  double log_rpi = 0.0;
};

constexpr double kLogEpsilon = 1e-6;

// Requires I > 0. Log variants are ln(max(ratio, epsilon)).
TargetRow compute_targets(const corpus::QueryProductAggregate& agg,
                          double epsilon = kLogEpsilon);

// Known target names: log_ctr, log_atcr, log_conv, log_rpi (and the raw
// ctr/atcr/conv/rpi for grading). Empty when the row lacks the metric.
std::optional<double> target_value(const TargetRow& row, const std::string& name);

// Indices with min_impressions <= I <= max_impressions.
std::vector<std::size_t> prune(const std::vector<std::int64_t>& impressions,
                               std::int64_t min_impressions, std::int64_t max_impressions);

// The "very large" default cut: value at the given percentile (0..100).
std::int64_t impressions_percentile(std::vector<std::int64_t> impressions, double percentile);

}  // namespace ltr::featurize
