#pragma once

#include <optional>
#include <vector>

namespace ltr::eval {

// rel = ceil(b * metric / max metric within the query), clamped to
// [1, b] for positive metrics; a zero metric gets grade 0. Empty when
// the per-query max is not positive (the query is excluded).
std::optional<std::vector<int>> bin_grades(const std::vector<double>& metric_values, int bins);

}  // namespace ltr::eval
