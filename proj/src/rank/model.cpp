#include "ltr/rank/model.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ltr::rank {

std::vector<std::size_t> ranking_order(const std::vector<double>& scores,
                                       const std::vector<ProductId>& ids) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return ids[a] < ids[b];
  });
  return order;
}

namespace {
constexpr const char* kMagic = "LTRMODEL";
constexpr int kVersion = 1;
}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::RandomForest: return "rf";
    case ModelKind::Gbm: return "gbm";
    case ModelKind::RankNet: return "ranknet";
    case ModelKind::LambdaMart: return "lambdamart";
    case ModelKind::Baseline: return "baseline";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "rf") return ModelKind::RandomForest;
  if (s == "gbm") return ModelKind::Gbm;
  if (s == "ranknet") return ModelKind::RankNet;
  if (s == "lambdamart") return ModelKind::LambdaMart;
  if (s == "baseline") return ModelKind::Baseline;
  throw std::invalid_argument("unknown model kind: " + s);
}

double RankModel::predict_row_trees(const double* row, std::int64_t n_trees) const {
  const std::size_t limit =
      n_trees < 0 ? trees.size() : std::min<std::size_t>(trees.size(), static_cast<std::size_t>(n_trees));
  double sum = 0.0;
  for (std::size_t t = 0; t < limit; ++t) sum += trees[t].predict(row);
  if (average_trees) return limit ? sum / static_cast<double>(limit) : 0.0;
  return base_score + shrinkage * sum;
}

double RankModel::predict_row(const double* row, ProductId id) const {
  switch (kind) {
    case ModelKind::RandomForest:
    case ModelKind::Gbm:
    case ModelKind::LambdaMart:
      return predict_row_trees(row, -1);
    case ModelKind::RankNet: {
      VecD z(static_cast<Eigen::Index>(active_features.size()));
      for (std::size_t i = 0; i < active_features.size(); ++i) z[static_cast<Eigen::Index>(i)] = row[active_features[i]];
      return mlp.score(z);
    }
    case ModelKind::Baseline: {
      auto it = product_scores.find(id);
      return it == product_scores.end() ? 0.0 : it->second;
    }
  }
  return 0.0;
}

VecD RankModel::predict(const RowMatD& features, const std::vector<ProductId>& ids) const {
  if (kind != ModelKind::Baseline && feature_dim > 0 && features.cols() != feature_dim) {
    throw std::invalid_argument("predict: feature width " + std::to_string(features.cols()) +
                                " does not match model mask '" + mask + "' width " +
                                std::to_string(feature_dim));
  }
  if (kind == ModelKind::Baseline && ids.size() != static_cast<std::size_t>(features.rows())) {
    throw std::invalid_argument("predict: baseline model needs one product id per row");
  }
  VecD out(features.rows());
  for (Eigen::Index r = 0; r < features.rows(); ++r) {
    out[r] = predict_row(features.row(r).data(), ids.empty() ? 0 : ids[static_cast<std::size_t>(r)]);
  }
  return out;
}

nlohmann::json model_to_json(const RankModel& model) {
  nlohmann::json j;
  j["magic"] = kMagic;
  j["version"] = kVersion;
  j["kind"] = to_string(model.kind);
  j["mask"] = model.mask;
  j["target"] = model.target;
  j["segment"] = model.segment;
  j["seed"] = model.seed;
  j["feature_dim"] = model.feature_dim;
  j["hyperparameters"] = model.hyperparameters;

  nlohmann::json params;
  params["base_score"] = model.base_score;
  params["shrinkage"] = model.shrinkage;
  params["average_trees"] = model.average_trees;
  params["active_features"] = model.active_features;
  nlohmann::json trees = nlohmann::json::array();
  for (const RegressionTree& t : model.trees) {
    nlohmann::json tj;
    std::vector<int> feature, left, right;
    std::vector<double> threshold, value;
    for (const TreeNode& n : t.nodes) {
      feature.push_back(n.feature);
      threshold.push_back(n.threshold);
      left.push_back(n.left);
      right.push_back(n.right);
      value.push_back(n.value);
    }
    tj["feature"] = feature;
    tj["threshold"] = threshold;
    tj["left"] = left;
    tj["right"] = right;
    tj["value"] = value;
    trees.push_back(std::move(tj));
  }
  params["trees"] = std::move(trees);

  if (model.kind == ModelKind::RankNet) {
    nlohmann::json mlp;
    nlohmann::json ws = nlohmann::json::array(), bs = nlohmann::json::array();
    for (const MatD& w : model.mlp.weights) {
      nlohmann::json wj;
      wj["rows"] = w.rows();
      wj["cols"] = w.cols();
      wj["data"] = std::vector<double>(w.data(), w.data() + w.size());
      ws.push_back(std::move(wj));
    }
    for (const VecD& b : model.mlp.biases) {
      bs.push_back(std::vector<double>(b.data(), b.data() + b.size()));
    }
    mlp["weights"] = std::move(ws);
    mlp["biases"] = std::move(bs);
    params["mlp"] = std::move(mlp);
  }
  if (model.kind == ModelKind::Baseline) {
    nlohmann::json scores = nlohmann::json::object();
    for (const auto& [id, s] : model.product_scores) scores[std::to_string(id)] = s;
    params["product_scores"] = std::move(scores);
  }
  j["params"] = std::move(params);
  return j;
}

RankModel model_from_json(const nlohmann::json& j) {
  if (!j.contains("magic") || j.at("magic").get<std::string>() != kMagic) {
    throw std::invalid_argument("not a model file (bad magic header)");
  }
  if (j.at("version").get<int>() != kVersion) {
    throw std::invalid_argument("unsupported model file version");
  }
  RankModel m;
  m.kind = model_kind_from_string(j.at("kind").get<std::string>());
  m.mask = j.at("mask").get<std::string>();
  m.target = j.at("target").get<std::string>();
  m.segment = j.at("segment").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.feature_dim = j.at("feature_dim").get<int>();
  m.hyperparameters = j.at("hyperparameters").get<std::map<std::string, double>>();

  const nlohmann::json& params = j.at("params");
  m.base_score = params.at("base_score").get<double>();
  m.shrinkage = params.at("shrinkage").get<double>();
  m.average_trees = params.at("average_trees").get<bool>();
  m.active_features = params.at("active_features").get<std::vector<int>>();
  for (const nlohmann::json& tj : params.at("trees")) {
    RegressionTree t;
    const auto feature = tj.at("feature").get<std::vector<int>>();
    const auto threshold = tj.at("threshold").get<std::vector<double>>();
    const auto left = tj.at("left").get<std::vector<int>>();
    const auto right = tj.at("right").get<std::vector<int>>();
    const auto value = tj.at("value").get<std::vector<double>>();
    for (std::size_t i = 0; i < feature.size(); ++i) {
      t.nodes.push_back({feature[i], threshold[i], left[i], right[i], value[i]});
    }
    m.trees.push_back(std::move(t));
  }
  if (m.kind == ModelKind::RankNet) {
    const nlohmann::json& mlp = params.at("mlp");
    for (const nlohmann::json& wj : mlp.at("weights")) {
      MatD w(wj.at("rows").get<Eigen::Index>(), wj.at("cols").get<Eigen::Index>());
      const auto data = wj.at("data").get<std::vector<double>>();
      std::copy(data.begin(), data.end(), w.data());
      m.mlp.weights.push_back(std::move(w));
    }
    for (const nlohmann::json& bj : mlp.at("biases")) {
      const auto data = bj.get<std::vector<double>>();
      VecD b(static_cast<Eigen::Index>(data.size()));
      std::copy(data.begin(), data.end(), b.data());
      m.mlp.biases.push_back(std::move(b));
    }
  }
  if (m.kind == ModelKind::Baseline && params.contains("product_scores")) {
    for (const auto& [key, val] : params.at("product_scores").items()) {
      m.product_scores[std::stoll(key)] = val.get<double>();
    }
  }
  return m;
}

void save_model(const RankModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << model_to_json(model).dump(1) << '\n';
}

RankModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  nlohmann::json j;
  in >> j;
  return model_from_json(j);
}

}  // namespace ltr::rank
