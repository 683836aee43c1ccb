#include "ltr/rank/ranknet.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ltr/rng.hpp"

namespace ltr::rank {

Mlp Mlp::create(int input_dim, const std::vector<int>& hidden, std::uint64_t seed) {
  Mlp mlp;
  auto rng = make_rng(seed);
  int in = input_dim;
  std::vector<int> dims = hidden;
  dims.push_back(1);
  for (int out : dims) {
    const double scale = std::sqrt(1.0 / static_cast<double>(in));
    MatD w(out, in);
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = uniform(rng, -scale, scale);
    mlp.weights.push_back(std::move(w));
    mlp.biases.push_back(VecD::Zero(out));
    in = out;
  }
  return mlp;
}

double Mlp::score(VecRef row) const {
  VecD a = row;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    a = (weights[l] * a + biases[l]).eval();
    if (l + 1 < weights.size()) a = a.array().tanh();
  }
  return a[0];
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    n += static_cast<std::size_t>(weights[l].size()) + static_cast<std::size_t>(biases[l].size());
  }
  return n;
}

VecD Mlp::flatten() const {
  VecD out(static_cast<Eigen::Index>(parameter_count()));
  Eigen::Index pos = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    out.segment(pos, weights[l].size()) =
        Eigen::Map<const VecD>(weights[l].data(), weights[l].size());
    pos += weights[l].size();
    out.segment(pos, biases[l].size()) = biases[l];
    pos += biases[l].size();
  }
  return out;
}

void Mlp::unflatten(VecRef params) {
  Eigen::Index pos = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    Eigen::Map<VecD>(weights[l].data(), weights[l].size()) = params.segment(pos, weights[l].size());
    pos += weights[l].size();
    biases[l] = params.segment(pos, biases[l].size());
    pos += biases[l].size();
  }
}

namespace {

// forward pass keeping activations, then backprop dL/dscore into the
// flattened gradient buffer
struct Backprop {
  std::vector<VecD> activations;  // input + post-tanh layer outputs

  double forward(const Mlp& mlp, VecRef row) {
    activations.clear();
    activations.push_back(row);
    VecD a = row;
    for (std::size_t l = 0; l < mlp.weights.size(); ++l) {
      a = (mlp.weights[l] * a + mlp.biases[l]).eval();
      if (l + 1 < mlp.weights.size()) a = a.array().tanh();
      activations.push_back(a);
    }
    return a[0];
  }

  void backward(const Mlp& mlp, double dscore, VecD& flat_grad) {
    VecD delta = VecD::Constant(1, dscore);
    Eigen::Index pos = static_cast<Eigen::Index>(flat_grad.size());
    for (std::size_t l = mlp.weights.size(); l-- > 0;) {
      pos -= mlp.biases[l].size();
      flat_grad.segment(pos, mlp.biases[l].size()) += delta;
      pos -= mlp.weights[l].size();
      // dW = delta * a_prev'
      Eigen::Map<MatD> gw(flat_grad.data() + pos, mlp.weights[l].rows(), mlp.weights[l].cols());
      gw += delta * activations[l].transpose();
      if (l > 0) {
        VecD upstream = mlp.weights[l].transpose() * delta;
        // through tanh: a = tanh(z), da/dz = 1 - a^2
        delta = upstream.array() * (1.0 - activations[l].array().square());
      }
    }
  }
};

double pair_loss_value(double s_better, double s_worse) {
  const double d = s_better - s_worse;
  // stable log(1 + exp(-d))
  return d > 0 ? std::log1p(std::exp(-d)) : -d + std::log1p(std::exp(d));
}

}  // namespace

double pair_loss(const Mlp& mlp, const RowMatD& features, const std::vector<RankPair>& pairs) {
  if (pairs.empty()) return 0.0;
  double loss = 0.0;
  for (const RankPair& p : pairs) {
    loss += pair_loss_value(mlp.score(features.row(static_cast<Eigen::Index>(p.better)).transpose()),
                            mlp.score(features.row(static_cast<Eigen::Index>(p.worse)).transpose()));
  }
  return loss / static_cast<double>(pairs.size());
}

VecD pair_loss_gradient(const Mlp& mlp, const RowMatD& features, const std::vector<RankPair>& pairs) {
  VecD grad = VecD::Zero(static_cast<Eigen::Index>(mlp.parameter_count()));
  if (pairs.empty()) return grad;
  Backprop bp;
  for (const RankPair& p : pairs) {
    const double sb = bp.forward(mlp, features.row(static_cast<Eigen::Index>(p.better)).transpose());
    auto better_acts = bp.activations;
    const double sw = bp.forward(mlp, features.row(static_cast<Eigen::Index>(p.worse)).transpose());
    auto worse_acts = bp.activations;
    // dL/d(s_b - s_w) = -sigma(-(s_b - s_w))
    const double d = sb - sw;
    const double coeff = -1.0 / (1.0 + std::exp(d));
    bp.activations = better_acts;
    bp.backward(mlp, coeff, grad);
    bp.activations = worse_acts;
    bp.backward(mlp, -coeff, grad);
  }
  return grad / static_cast<double>(pairs.size());
}

std::vector<RankPair> sample_pairs(const RankData& data, const RankData::Group& group,
                                   int max_pairs, std::mt19937_64& rng) {
  std::vector<RankPair> pairs;
  const std::size_t n = group.end - group.begin;
  if (n < 2) return pairs;

  // count valid pairs cheaply by grade histogram
  std::map<int, std::size_t> by_grade;
  for (std::size_t i = group.begin; i < group.end; ++i) by_grade[data.grades[i]]++;
  std::size_t valid = n * (n - 1) / 2;
  for (const auto& [g, c] : by_grade) valid -= c * (c - 1) / 2;
  if (valid == 0) return pairs;

  if (valid <= static_cast<std::size_t>(max_pairs)) {
    for (std::size_t i = group.begin; i < group.end; ++i) {
      for (std::size_t j = i + 1; j < group.end; ++j) {
        if (data.grades[i] == data.grades[j]) continue;
        if (data.grades[i] > data.grades[j]) {
          pairs.push_back({i, j});
        } else {
          pairs.push_back({j, i});
        }
      }
    }
    return pairs;
  }
  std::size_t attempts = 0;
  const std::size_t max_attempts = static_cast<std::size_t>(max_pairs) * 30;
  while (pairs.size() < static_cast<std::size_t>(max_pairs) && attempts < max_attempts) {
    ++attempts;
    const std::size_t i = group.begin + rng() % n;
    const std::size_t j = group.begin + rng() % n;
    if (data.grades[i] == data.grades[j]) continue;
    if (data.grades[i] > data.grades[j]) {
      pairs.push_back({i, j});
    } else {
      pairs.push_back({j, i});
    }
  }
  return pairs;
}

RankNetResult ranknet_train(const RankData& data, const std::vector<int>& active_features,
                            const RankNetConfig& config, std::uint64_t seed) {
  if (data.rows() == 0) throw std::invalid_argument("ranknet_train: empty dataset");

  // project onto the active columns
  RowMatD x(data.features.rows(), static_cast<Eigen::Index>(active_features.size()));
  for (std::size_t c = 0; c < active_features.size(); ++c) {
    x.col(static_cast<Eigen::Index>(c)) = data.features.col(active_features[c]);
  }
  // standardize for stable MLP training
  const Eigen::RowVectorXd mean = x.colwise().mean();
  Eigen::RowVectorXd scale = ((x.rowwise() - mean).array().square().colwise().mean()).sqrt();
  for (Eigen::Index i = 0; i < scale.size(); ++i) {
    if (scale[i] < 1e-12) scale[i] = 1.0;
  }
  x = (x.rowwise() - mean).array().rowwise() / scale.array();

  auto rng = make_rng(seed);
  RankNetResult result;
  result.mlp = Mlp::create(static_cast<int>(active_features.size()), config.hidden,
                           derive_seed(seed, "mlp-init"));

  std::vector<std::size_t> group_order(data.groups.size());
  std::iota(group_order.begin(), group_order.end(), 0);

  bool any_pairs = false;
  Backprop bp;
  VecD grad(static_cast<Eigen::Index>(result.mlp.parameter_count()));
  VecD params = result.mlp.flatten();

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    ltr::shuffle(group_order, rng);
    double loss_sum = 0.0;
    std::size_t loss_count = 0;
    for (std::size_t gi : group_order) {
      const auto pairs = sample_pairs(data, data.groups[gi], config.max_pairs_per_group, rng);
      for (const RankPair& p : pairs) {
        any_pairs = true;
        grad.setZero();
        const double sb = bp.forward(result.mlp, x.row(static_cast<Eigen::Index>(p.better)).transpose());
        auto better_acts = bp.activations;
        const double sw = bp.forward(result.mlp, x.row(static_cast<Eigen::Index>(p.worse)).transpose());
        auto worse_acts = bp.activations;
        const double d = sb - sw;
        const double coeff = -1.0 / (1.0 + std::exp(d));
        bp.activations = better_acts;
        bp.backward(result.mlp, coeff, grad);
        bp.activations = worse_acts;
        bp.backward(result.mlp, -coeff, grad);
        params -= config.learning_rate * grad;
        result.mlp.unflatten(params);
        loss_sum += pair_loss_value(sb, sw);
        ++loss_count;
      }
    }
    if (epoch == 0 && !any_pairs) {
      throw std::invalid_argument("ranknet_train: no valid grade-ordered pairs");
    }
    result.epoch_loss.push_back(loss_count ? loss_sum / static_cast<double>(loss_count) : 0.0);
  }

  // fold the standardization into the first layer so prediction takes raw
  // active-column rows
  Mlp& m = result.mlp;
  for (Eigen::Index j = 0; j < m.weights[0].cols(); ++j) {
    m.weights[0].col(j) /= scale[j];
  }
  m.biases[0] -= m.weights[0] * mean.transpose();
  return result;
}

}  // namespace ltr::rank
