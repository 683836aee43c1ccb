#include "ltr/eval/ndcg.hpp"

#include <algorithm>
#include <cmath>

namespace ltr::eval {

double gain(int grade, GainKind kind) {
  switch (kind) {
    case GainKind::Exponential:
      return std::exp2(static_cast<double>(grade)) - 1.0;
    case GainKind::Literal:
      return std::exp2(static_cast<double>(grade - 1));
  }
  return 0.0;
}

double position_discount(std::size_t position_1based) {
  return 1.0 / std::log2(static_cast<double>(position_1based) + 1.0);
}

double dcg(const std::vector<int>& grades_in_rank_order, std::size_t k, GainKind kind) {
  const std::size_t n = std::min(k, grades_in_rank_order.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += gain(grades_in_rank_order[i], kind) * position_discount(i + 1);
  }
  return sum;
}

double idcg(std::vector<int> grades, std::size_t k, GainKind kind) {
  std::sort(grades.begin(), grades.end(), std::greater<>());
  return dcg(grades, k, kind);
}

std::optional<double> ndcg(const std::vector<int>& grades_in_rank_order, std::size_t k,
                           GainKind kind) {
  const double ideal = idcg(grades_in_rank_order, k, kind);
  if (ideal <= 0.0) return std::nullopt;
  return dcg(grades_in_rank_order, k, kind) / ideal;
}

}  // namespace ltr::eval
