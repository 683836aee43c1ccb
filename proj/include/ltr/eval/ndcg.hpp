#pragma once

#include <optional>
#include <vector>

namespace ltr::eval {

enum class GainKind {
  Exponential,  // 2^rel - 1; grade 0 contributes nothing
  Literal,      // 2^(rel-1), the printed form, kept for compatibility
};

double gain(int grade, GainKind kind = GainKind::Exponential);
double position_discount(std::size_t position_1based);  // 1 / log2(pos + 1)

// DCG over the top K of `grades_in_rank_order` (index 0 = position 1).
double dcg(const std::vector<int>& grades_in_rank_order, std::size_t k,
           GainKind kind = GainKind::Exponential);

// Ideal DCG: grades sorted descending.
double idcg(std::vector<int> grades, std::size_t k, GainKind kind = GainKind::Exponential);

// DCG / IDCG; empty when IDCG == 0 (the query is excluded from means).
std::optional<double> ndcg(const std::vector<int>& grades_in_rank_order, std::size_t k,
                           GainKind kind = GainKind::Exponential);

}  // namespace ltr::eval
