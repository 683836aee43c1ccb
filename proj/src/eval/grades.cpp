#include "ltr/eval/grades.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltr::eval {

std::optional<std::vector<int>> bin_grades(const std::vector<double>& metric_values, int bins) {
  if (bins < 2) throw std::invalid_argument("bin_grades: need at least 2 bins");
  double max_metric = 0.0;
  for (double m : metric_values) max_metric = std::max(max_metric, m);
  if (max_metric <= 0.0) return std::nullopt;

  std::vector<int> grades(metric_values.size(), 0);
  for (std::size_t i = 0; i < metric_values.size(); ++i) {
    const double m = metric_values[i];
    if (m <= 0.0) continue;
    const int g = static_cast<int>(std::ceil(bins * m / max_metric));
    grades[i] = std::clamp(g, 1, bins);
  }
  return grades;
}

}  // namespace ltr::eval
