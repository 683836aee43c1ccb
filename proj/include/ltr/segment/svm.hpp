#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ltr/segment/coherency.hpp"
#include "ltr/types.hpp"

namespace ltr::segment {

struct SvmConfig {
  double C = 1.0;
  double gamma = 0.0;  // 0 selects 1/feature_dimension
  double tolerance = 1e-3;
  std::int64_t max_iterations = 500000;
};

// RBF-kernel SVM. The slack budget C is spread over the samples
// (per-sample box C/n), which makes the decision function invariant to
// duplicating the training set.
struct SvmModel {
  double gamma = 1.0;
  double bias = 0.0;
  MatD support_vectors;  // rows, already standardized
  VecD dual_coef;        // alpha_i * y_i
  VecD feature_mean;
  VecD feature_scale;
  bool converged = false;
  double final_violation = 0.0;
  std::int64_t iterations = 0;

  double decision_value(VecRef x) const;  // raw input, standardized internally
  SegmentLabel predict(VecRef x) const;   // >= 0 -> Broad (deterministic tie rule)
};

// rows: one sample per row; labels Broad=+1, Narrow=-1. Both classes
// must be present. Standardization parameters are fit here and stored.
SvmModel svm_train(const MatD& rows, const std::vector<SegmentLabel>& labels,
                   const SvmConfig& config, std::uint64_t seed);

struct GridSelection {
  double C = 1.0;
  double gamma = 0.0;
  double cv_accuracy = 0.0;
};

// 3-fold cross-validated grid search over C x gamma; ties prefer the
// smaller C then the smaller gamma.
GridSelection svm_grid_select(const MatD& rows, const std::vector<SegmentLabel>& labels,
                              const std::vector<double>& c_grid,
                              const std::vector<double>& gamma_grid, std::uint64_t seed);

double svm_accuracy(const SvmModel& model, const MatD& rows,
                    const std::vector<SegmentLabel>& labels);

nlohmann::json svm_to_json(const SvmModel& model);
SvmModel svm_from_json(const nlohmann::json& j);
void save_svm(const SvmModel& model, const std::string& path);
SvmModel load_svm(const std::string& path);

}  // namespace ltr::segment
