#include "ltr/segment/coherency.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltr::segment {

CoherencyResult coherency_score(const std::vector<VecD>& recall_vectors) {
  if (recall_vectors.empty()) throw std::invalid_argument("coherency_score: empty recall set");
  const auto dim = recall_vectors.front().size();
  VecD centroid = VecD::Zero(dim);
  for (const VecD& v : recall_vectors) {
    if (v.size() != dim) throw std::invalid_argument("coherency_score: dimension mismatch");
    centroid += v;
  }
  centroid /= static_cast<double>(recall_vectors.size());

  std::vector<double> dots(recall_vectors.size());
  for (std::size_t i = 0; i < recall_vectors.size(); ++i) dots[i] = recall_vectors[i].dot(centroid);
  std::sort(dots.begin(), dots.end());
  const std::size_t n = dots.size();
  const double median = n % 2 == 1 ? dots[n / 2] : 0.5 * (dots[n / 2 - 1] + dots[n / 2]);

  CoherencyResult r;
  r.centroid = std::move(centroid);
  r.score = median;
  r.recall_set_size = n;
  return r;
}

SegmentLabel threshold_label(double score, double threshold) {
  return score <= threshold ? SegmentLabel::Broad : SegmentLabel::Narrow;
}

std::optional<SegmentLabel> heuristic_label(double score, double broad_cut, double narrow_cut) {
  if (score <= broad_cut) return SegmentLabel::Broad;
  if (score > narrow_cut) return SegmentLabel::Narrow;
  return std::nullopt;
}

}  // namespace ltr::segment
