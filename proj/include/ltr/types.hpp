#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace ltr {

template <typename T>
using Vector = Eigen::Vector<T, Eigen::Dynamic>;
template <typename T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

using VecD = Vector<double>;
using MatD = Matrix<double>;
// feature matrices are row-major: rows are contiguous for per-row scoring
using RowMatD = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VecRef = Eigen::Ref<const VecD>;

using ProductId = std::int64_t;
using SessionId = std::int64_t;

}  // namespace ltr
