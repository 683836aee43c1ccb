#include "ltr/featurize/autoencoder.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ltr/rng.hpp"

namespace ltr::featurize {

namespace {

MatD init_weight(Eigen::Index out, Eigen::Index in, std::mt19937_64& rng) {
  const double scale = std::sqrt(6.0 / static_cast<double>(in + out));
  MatD w(out, in);
  for (Eigen::Index i = 0; i < out; ++i)
    for (Eigen::Index j = 0; j < in; ++j) w(i, j) = uniform(rng, -scale, scale);
  return w;
}

inline MatD relu(const MatD& z) { return z.cwiseMax(0.0); }

// batch forward; rows are samples
struct Forward {
  std::vector<MatD> enc_act;  // inputs to each encoder layer, then code
  std::vector<MatD> dec_act;
  MatD output;                // logistic probabilities

  void run(const Autoencoder& m, const MatD& x) {
    enc_act.clear();
    dec_act.clear();
    enc_act.push_back(x);
    MatD a = x;
    for (std::size_t l = 0; l < m.enc_w.size(); ++l) {
      a = relu(((a * m.enc_w[l].transpose()).rowwise() + m.enc_b[l].transpose()).eval());
      enc_act.push_back(a);
    }
    dec_act.push_back(a);
    for (std::size_t l = 0; l < m.dec_w.size(); ++l) {
      MatD z = ((a * m.dec_w[l].transpose()).rowwise() + m.dec_b[l].transpose()).eval();
      if (l + 1 < m.dec_w.size()) {
        a = relu(z);
      } else {
        a = (1.0 / (1.0 + (-z.array()).exp())).matrix();
      }
      dec_act.push_back(a);
    }
    output = a;
  }
};

double bce(const MatD& prob, const MatD& clean) {
  const auto p = prob.array().min(1.0 - 1e-12).max(1e-12);
  const auto x = clean.array();
  return -(x * p.log() + (1.0 - x) * (1.0 - p).log()).mean();
}

}  // namespace

VecD Autoencoder::encode(VecRef onehot) const {
  VecD a = onehot;
  for (std::size_t l = 0; l < enc_w.size(); ++l) {
    a = (enc_w[l] * a + enc_b[l]).cwiseMax(0.0);
  }
  return a;
}

VecD Autoencoder::reconstruct(VecRef onehot) const {
  VecD a = encode(onehot);
  for (std::size_t l = 0; l < dec_w.size(); ++l) {
    VecD z = dec_w[l] * a + dec_b[l];
    if (l + 1 < dec_w.size()) {
      a = z.cwiseMax(0.0);
    } else {
      a = (1.0 / (1.0 + (-z.array()).exp())).matrix();
    }
  }
  return a;
}

double reconstruction_loss(const Autoencoder& model, const RowMatD& onehots) {
  Forward fwd;
  fwd.run(model, onehots);
  return bce(fwd.output, onehots);
}

DaeResult dae_train(const RowMatD& onehots, const DaeConfig& config, std::uint64_t seed) {
  const Eigen::Index n = onehots.rows();
  const Eigen::Index dim = onehots.cols();
  if (n < config.code_dim) {
    throw std::invalid_argument("dae_train: need at least code_dim distinct inputs");
  }

  auto rng = make_rng(seed);
  DaeResult result;
  Autoencoder& m = result.model;

  std::vector<Eigen::Index> layer_dims;
  layer_dims.push_back(dim);
  for (int w : config.encoder_widths) layer_dims.push_back(w);
  layer_dims.push_back(config.code_dim);
  for (std::size_t l = 0; l + 1 < layer_dims.size(); ++l) {
    m.enc_w.push_back(init_weight(layer_dims[l + 1], layer_dims[l], rng));
    m.enc_b.push_back(VecD::Zero(layer_dims[l + 1]));
  }
  for (std::size_t l = layer_dims.size() - 1; l > 0; --l) {
    m.dec_w.push_back(init_weight(layer_dims[l - 1], layer_dims[l], rng));
    m.dec_b.push_back(VecD::Zero(layer_dims[l - 1]));
  }

  // deterministic holdout split
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  ltr::shuffle(order, rng);
  Eigen::Index n_hold = static_cast<Eigen::Index>(config.holdout_fraction * static_cast<double>(n));
  if (n_hold < 1) n_hold = std::min<Eigen::Index>(1, n - 1);
  if (n - n_hold < config.code_dim) n_hold = 0;
  RowMatD hold(n_hold, dim), train(n - n_hold, dim);
  for (Eigen::Index i = 0; i < n_hold; ++i) hold.row(i) = onehots.row(order[i]);
  for (Eigen::Index i = n_hold; i < n; ++i) train.row(i - n_hold) = onehots.row(order[i]);
  const RowMatD& eval_set = n_hold > 0 ? hold : train;

  result.untrained_holdout_loss = reconstruction_loss(m, eval_set);

  const std::size_t n_layers = m.enc_w.size() + m.dec_w.size();
  std::vector<MatD> vel_w(n_layers);
  std::vector<VecD> vel_b(n_layers);
  for (std::size_t l = 0; l < m.enc_w.size(); ++l) {
    vel_w[l] = MatD::Zero(m.enc_w[l].rows(), m.enc_w[l].cols());
    vel_b[l] = VecD::Zero(m.enc_b[l].size());
  }
  for (std::size_t l = 0; l < m.dec_w.size(); ++l) {
    vel_w[m.enc_w.size() + l] = MatD::Zero(m.dec_w[l].rows(), m.dec_w[l].cols());
    vel_b[m.enc_w.size() + l] = VecD::Zero(m.dec_b[l].size());
  }

  Forward fwd;
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(train.rows()));
  std::iota(idx.begin(), idx.end(), 0);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    ltr::shuffle(idx, rng);
    for (std::size_t start = 0; start < idx.size(); start += config.batch_size) {
      const std::size_t bs = std::min<std::size_t>(config.batch_size, idx.size() - start);
      MatD clean(bs, dim), noisy(bs, dim);
      for (std::size_t i = 0; i < bs; ++i) clean.row(static_cast<Eigen::Index>(i)) = train.row(idx[start + i]);
      if (config.denoising) {
        for (Eigen::Index i = 0; i < noisy.rows(); ++i)
          for (Eigen::Index j = 0; j < dim; ++j) noisy(i, j) = clean(i, j) + uniform01(rng);
      } else {
        noisy = clean;
      }

      fwd.run(m, noisy);
      // output delta: d(mean BCE)/dz = (p - x) / (bs * dim)
      MatD delta = (fwd.output - clean) / static_cast<double>(bs * dim);

      const double lr = config.learning_rate;
      // decoder backward
      for (std::size_t l = m.dec_w.size(); l-- > 0;) {
        const MatD& input = l == 0 ? fwd.enc_act.back() : fwd.dec_act[l];
        MatD gw = delta.transpose() * input;
        VecD gb = delta.colwise().sum();
        MatD upstream = delta * m.dec_w[l];
        const std::size_t vi = m.enc_w.size() + l;
        vel_w[vi] = config.momentum * vel_w[vi] - lr * gw;
        vel_b[vi] = config.momentum * vel_b[vi] - lr * gb;
        m.dec_w[l] += vel_w[vi];
        m.dec_b[l] += vel_b[vi];
        if (l > 0) {
          delta = upstream.cwiseProduct((fwd.dec_act[l].array() > 0.0).cast<double>().matrix());
        } else {
          delta = upstream.cwiseProduct((fwd.enc_act.back().array() > 0.0).cast<double>().matrix());
        }
      }
      // encoder backward
      for (std::size_t l = m.enc_w.size(); l-- > 0;) {
        const MatD& input = fwd.enc_act[l];
        MatD gw = delta.transpose() * input;
        VecD gb = delta.colwise().sum();
        MatD upstream = delta * m.enc_w[l];
        vel_w[l] = config.momentum * vel_w[l] - lr * gw;
        vel_b[l] = config.momentum * vel_b[l] - lr * gb;
        m.enc_w[l] += vel_w[l];
        m.enc_b[l] += vel_b[l];
        if (l > 0) {
          delta = upstream.cwiseProduct((fwd.enc_act[l].array() > 0.0).cast<double>().matrix());
        }
      }
    }
    const double loss = reconstruction_loss(m, eval_set);
    if (!std::isfinite(loss)) {
      throw std::runtime_error("dae_train: loss diverged (NaN/Inf) at epoch " +
                               std::to_string(epoch + 1) + "; lower the learning rate");
    }
    result.holdout_loss.push_back(loss);
  }
  return result;
}

nlohmann::json autoencoder_to_json(const Autoencoder& model) {
  auto mat = [](const MatD& w) {
    nlohmann::json j;
    j["rows"] = w.rows();
    j["cols"] = w.cols();
    j["data"] = std::vector<double>(w.data(), w.data() + w.size());
    return j;
  };
  auto vec = [](const VecD& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  nlohmann::json j;
  j["magic"] = "LTRDAE";
  j["category"] = model.category;
  for (const MatD& w : model.enc_w) j["enc_w"].push_back(mat(w));
  for (const VecD& b : model.enc_b) j["enc_b"].push_back(vec(b));
  for (const MatD& w : model.dec_w) j["dec_w"].push_back(mat(w));
  for (const VecD& b : model.dec_b) j["dec_b"].push_back(vec(b));
  return j;
}

Autoencoder autoencoder_from_json(const nlohmann::json& j) {
  if (!j.contains("magic") || j.at("magic") != "LTRDAE") {
    throw std::invalid_argument("not an autoencoder file");
  }
  auto mat = [](const nlohmann::json& mj) {
    MatD w(mj.at("rows").get<Eigen::Index>(), mj.at("cols").get<Eigen::Index>());
    const auto data = mj.at("data").get<std::vector<double>>();
    std::copy(data.begin(), data.end(), w.data());
    return w;
  };
  auto vec = [](const nlohmann::json& vj) {
    const auto data = vj.get<std::vector<double>>();
    VecD v(static_cast<Eigen::Index>(data.size()));
    std::copy(data.begin(), data.end(), v.data());
    return v;
  };
  Autoencoder m;
  m.category = j.at("category").get<std::string>();
  for (const auto& wj : j.at("enc_w")) m.enc_w.push_back(mat(wj));
  for (const auto& bj : j.at("enc_b")) m.enc_b.push_back(vec(bj));
  for (const auto& wj : j.at("dec_w")) m.dec_w.push_back(mat(wj));
  for (const auto& bj : j.at("dec_b")) m.dec_b.push_back(vec(bj));
  return m;
}

void save_autoencoder(const Autoencoder& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write autoencoder file: " + path);
  out << autoencoder_to_json(model).dump() << '\n';
}

Autoencoder load_autoencoder(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open autoencoder file: " + path);
  nlohmann::json j;
  in >> j;
  return autoencoder_from_json(j);
}

}  // namespace ltr::featurize
