#include "ltr/segment/svm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ltr/rng.hpp"

namespace ltr::segment {

namespace {

MatD rbf_kernel_matrix(const MatD& x, double gamma) {
  const Eigen::Index n = x.rows();
  const VecD sq = x.rowwise().squaredNorm();
  MatD k = -2.0 * (x * x.transpose());
  k.colwise() += sq;
  k.rowwise() += sq.transpose();
  return (-gamma * k.array()).exp();
}

}  // namespace

double SvmModel::decision_value(VecRef x) const {
  VecD z = (x - feature_mean).cwiseQuotient(feature_scale);
  double f = bias;
  for (Eigen::Index i = 0; i < support_vectors.rows(); ++i) {
    const double d2 = (support_vectors.row(i).transpose() - z).squaredNorm();
    f += dual_coef[i] * std::exp(-gamma * d2);
  }
  return f;
}

SegmentLabel SvmModel::predict(VecRef x) const {
  return decision_value(x) >= 0.0 ? SegmentLabel::Broad : SegmentLabel::Narrow;
}

SvmModel svm_train(const MatD& rows, const std::vector<SegmentLabel>& labels,
                   const SvmConfig& config, std::uint64_t /*seed*/) {
  const Eigen::Index n = rows.rows();
  const Eigen::Index dim = rows.cols();
  if (n < 2 || static_cast<std::size_t>(n) != labels.size()) {
    throw std::invalid_argument("svm_train: bad training shape");
  }
  if (n > 6000) throw std::invalid_argument("svm_train: too many rows for the dense kernel cache");

  VecD y(n);
  bool has_pos = false, has_neg = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    y[i] = labels[i] == SegmentLabel::Broad ? 1.0 : -1.0;
    (y[i] > 0 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) throw std::invalid_argument("svm_train: both classes required");

  SvmModel model;
  model.feature_mean = rows.colwise().mean();
  MatD x = rows.rowwise() - model.feature_mean.transpose();
  model.feature_scale = (x.array().square().colwise().mean()).sqrt();
  for (Eigen::Index d = 0; d < dim; ++d) {
    if (model.feature_scale[d] < 1e-12) model.feature_scale[d] = 1.0;
  }
  x = x.array().rowwise() / model.feature_scale.transpose().array();

  model.gamma = config.gamma > 0.0 ? config.gamma : 1.0 / static_cast<double>(dim);
  const MatD kernel = rbf_kernel_matrix(x, model.gamma);
  const double box = config.C / static_cast<double>(n);

  VecD alpha = VecD::Zero(n);
  VecD grad = VecD::Constant(n, -1.0);  // d/dalpha of (1/2 a'Qa - e'a), Q_ij = y_i y_j K_ij

  auto in_up = [&](Eigen::Index t) {
    return (y[t] > 0 && alpha[t] < box) || (y[t] < 0 && alpha[t] > 0);
  };
  auto in_low = [&](Eigen::Index t) {
    return (y[t] < 0 && alpha[t] < box) || (y[t] > 0 && alpha[t] > 0);
  };

  std::int64_t iter = 0;
  double gap = std::numeric_limits<double>::infinity();
  while (iter < config.max_iterations) {
    // maximal-violating pair
    Eigen::Index i = -1, j = -1;
    double up = -std::numeric_limits<double>::infinity();
    double low = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      if (in_up(t) && v > up) {
        up = v;
        i = t;
      }
      if (in_low(t) && v < low) {
        low = v;
        j = t;
      }
    }
    gap = up - low;
    if (gap <= config.tolerance || i < 0 || j < 0) break;

    double eta = kernel(i, i) + kernel(j, j) - 2.0 * kernel(i, j);
    if (eta <= 1e-12) eta = 1e-12;

    // move delta along (y_i, -y_j), which keeps y'alpha fixed
    double delta = -(y[i] * grad[i] - y[j] * grad[j]) / eta;
    double lo = y[i] > 0 ? -alpha[i] : alpha[i] - box;
    double hi = y[i] > 0 ? box - alpha[i] : alpha[i];
    lo = std::max(lo, y[j] > 0 ? alpha[j] - box : -alpha[j]);
    hi = std::min(hi, y[j] > 0 ? alpha[j] : box - alpha[j]);
    delta = std::clamp(delta, lo, hi);

    const double dai = y[i] * delta, daj = -y[j] * delta;
    if (std::abs(dai) < 1e-16 && std::abs(daj) < 1e-16) break;  // numerically stuck
    alpha[i] += dai;
    alpha[j] += daj;
    grad += (y.array() * kernel.col(i).array()).matrix() * (y[i] * dai) +
            (y.array() * kernel.col(j).array()).matrix() * (y[j] * daj);
    ++iter;
  }
  model.iterations = iter;
  model.final_violation = gap;
  model.converged = gap <= config.tolerance;

  // bias from free support vectors, else the midpoint of the KKT interval
  double sum = 0.0;
  int free_count = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    if (alpha[t] > 1e-12 * box && alpha[t] < box * (1.0 - 1e-12)) {
      sum += -y[t] * grad[t];
      ++free_count;
    }
  }
  if (free_count > 0) {
    model.bias = sum / free_count;
  } else {
    double up = -std::numeric_limits<double>::infinity();
    double low = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      if (in_up(t)) up = std::max(up, v);
      if (in_low(t)) low = std::min(low, v);
    }
    model.bias = 0.5 * (up + low);
  }

  std::vector<Eigen::Index> sv;
  for (Eigen::Index t = 0; t < n; ++t) {
    if (alpha[t] > 1e-14) sv.push_back(t);
  }
  model.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), dim);
  model.dual_coef.resize(static_cast<Eigen::Index>(sv.size()));
  for (std::size_t r = 0; r < sv.size(); ++r) {
    model.support_vectors.row(static_cast<Eigen::Index>(r)) = x.row(sv[r]);
    model.dual_coef[static_cast<Eigen::Index>(r)] = alpha[sv[r]] * y[sv[r]];
  }
  return model;
}

double svm_accuracy(const SvmModel& model, const MatD& rows,
                    const std::vector<SegmentLabel>& labels) {
  Eigen::Index correct = 0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    if (model.predict(rows.row(i).transpose()) == labels[i]) ++correct;
  }
  return rows.rows() == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(rows.rows());
}

GridSelection svm_grid_select(const MatD& rows, const std::vector<SegmentLabel>& labels,
                              const std::vector<double>& c_grid,
                              const std::vector<double>& gamma_grid, std::uint64_t seed) {
  const Eigen::Index n = rows.rows();
  const int folds = 3;
  // stratified fold assignment
  std::vector<int> fold(n, 0);
  {
    auto rng = make_rng(derive_seed(seed, "svm-folds"));
    for (SegmentLabel cls : {SegmentLabel::Broad, SegmentLabel::Narrow}) {
      std::vector<Eigen::Index> idx;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (labels[i] == cls) idx.push_back(i);
      }
      ltr::shuffle(idx, rng);
      for (std::size_t k = 0; k < idx.size(); ++k) fold[idx[k]] = static_cast<int>(k % folds);
    }
  }

  GridSelection best;
  double best_acc = -1.0;
  for (double c : c_grid) {
    for (double g : gamma_grid) {
      double acc_sum = 0.0;
      for (int f = 0; f < folds; ++f) {
        std::vector<Eigen::Index> train_idx, test_idx;
        for (Eigen::Index i = 0; i < n; ++i) (fold[i] == f ? test_idx : train_idx).push_back(i);
        MatD xtr(static_cast<Eigen::Index>(train_idx.size()), rows.cols());
        std::vector<SegmentLabel> ytr(train_idx.size());
        for (std::size_t i = 0; i < train_idx.size(); ++i) {
          xtr.row(static_cast<Eigen::Index>(i)) = rows.row(train_idx[i]);
          ytr[i] = labels[train_idx[i]];
        }
        MatD xte(static_cast<Eigen::Index>(test_idx.size()), rows.cols());
        std::vector<SegmentLabel> yte(test_idx.size());
        for (std::size_t i = 0; i < test_idx.size(); ++i) {
          xte.row(static_cast<Eigen::Index>(i)) = rows.row(test_idx[i]);
          yte[i] = labels[test_idx[i]];
        }
        SvmConfig cfg;
        cfg.C = c;
        cfg.gamma = g;
        const SvmModel m = svm_train(xtr, ytr, cfg, seed);
        acc_sum += svm_accuracy(m, xte, yte);
      }
      const double acc = acc_sum / folds;
      if (acc > best_acc + 1e-12) {
        best_acc = acc;
        best = {c, g, acc};
      }
    }
  }
  return best;
}

nlohmann::json svm_to_json(const SvmModel& m) {
  auto vec = [](const VecD& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  nlohmann::json j;
  j["magic"] = "LTRSVM";
  j["gamma"] = m.gamma;
  j["bias"] = m.bias;
  j["converged"] = m.converged;
  j["final_violation"] = m.final_violation;
  j["iterations"] = m.iterations;
  j["feature_mean"] = vec(m.feature_mean);
  j["feature_scale"] = vec(m.feature_scale);
  j["dual_coef"] = vec(m.dual_coef);
  j["sv_rows"] = m.support_vectors.rows();
  j["sv_cols"] = m.support_vectors.cols();
  j["support_vectors"] = std::vector<double>(
      m.support_vectors.data(), m.support_vectors.data() + m.support_vectors.size());
  return j;
}

SvmModel svm_from_json(const nlohmann::json& j) {
  if (!j.contains("magic") || j.at("magic") != "LTRSVM") {
    throw std::invalid_argument("not an svm model file");
  }
  auto vec = [](const nlohmann::json& vj) {
    const auto data = vj.get<std::vector<double>>();
    VecD v(static_cast<Eigen::Index>(data.size()));
    std::copy(data.begin(), data.end(), v.data());
    return v;
  };
  SvmModel m;
  m.gamma = j.at("gamma").get<double>();
  m.bias = j.at("bias").get<double>();
  m.converged = j.at("converged").get<bool>();
  m.final_violation = j.at("final_violation").get<double>();
  m.iterations = j.at("iterations").get<std::int64_t>();
  m.feature_mean = vec(j.at("feature_mean"));
  m.feature_scale = vec(j.at("feature_scale"));
  m.dual_coef = vec(j.at("dual_coef"));
  m.support_vectors.resize(j.at("sv_rows").get<Eigen::Index>(), j.at("sv_cols").get<Eigen::Index>());
  const auto data = j.at("support_vectors").get<std::vector<double>>();
  std::copy(data.begin(), data.end(), m.support_vectors.data());
  return m;
}

void save_svm(const SvmModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write svm file: " + path);
  out << svm_to_json(model).dump() << '\n';
}

SvmModel load_svm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open svm file: " + path);
  nlohmann::json j;
  in >> j;
  return svm_from_json(j);
}

}  // namespace ltr::segment
