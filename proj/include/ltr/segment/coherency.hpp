#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ltr/types.hpp"

namespace ltr::segment {

enum class SegmentLabel { Broad, Narrow };

inline const char* to_string(SegmentLabel l) {
  return l == SegmentLabel::Broad ? "broad" : "narrow";
}

struct CoherencyResult {
  VecD centroid;       // arithmetic mean of the recall vectors, not re-normalized
  double score = 0.0;  // median inner product with the centroid, in [-1, 1]
  std::size_t recall_set_size = 0;
};

// Input vectors must be unit norm and share a dimension. For an even
// count the median is the mean of the two middle values.
CoherencyResult coherency_score(const std::vector<VecD>& recall_vectors);

// Production classification threshold: score <= 0.58 -> Broad.
SegmentLabel threshold_label(double score, double threshold = 0.58);

// Training-label heuristic: <= 0.3 Broad, > 0.7 Narrow, otherwise the
// query is filtered from the classifier train set.
std::optional<SegmentLabel> heuristic_label(double score, double broad_cut = 0.3,
                                            double narrow_cut = 0.7);

}  // namespace ltr::segment
