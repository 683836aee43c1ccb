#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ltr/corpus/synthetic.hpp"
#include "ltr/embed/matrix_factorization.hpp"
#include "ltr/embed/skipgram.hpp"
#include "ltr/eval/ndcg.hpp"
#include "ltr/featurize/autoencoder.hpp"
#include "ltr/rank/bm25.hpp"
#include "ltr/rank/forest.hpp"
#include "ltr/rank/lambdamart.hpp"
#include "ltr/rank/ranknet.hpp"
#include "ltr/segment/svm.hpp"

namespace ltr::pipeline {

struct ModelSpec {
  std::string kind = "lambdamart";  // rf|gbm|ranknet|lambdamart
  std::string mask = "YYYY";
  std::string target = "log_ctr";
  std::string segment = "all";  // all|broad|narrow

  std::string name() const { return kind + "_" + mask + "_" + target + "_" + segment; }
};

// One experiment: data source, every stage's parameters and the model
// roster. All defaults can be overridden from the config file; stage
// seeds derive from the single global seed.
struct ExperimentConfig {
  std::uint64_t seed = 42;

  // data
  std::string source = "synthetic";  // synthetic|files
  corpus::GeneratorConfig generator;
  std::string catalogue_path, sessions_path, queries_path, synonyms_path;

  // embed
  embed::MfConfig mf;
  embed::SkipgramConfig skipgram;

  // segment
  double threshold = 0.58;
  double broad_cut = 0.3;
  double narrow_cut = 0.7;
  double classifier_split = 0.7;  // train fraction, stratified
  segment::SvmConfig svm;
  bool svm_grid_search = false;

  // featurize
  featurize::DaeConfig dae;
  int entity_window_days = 15;
  int baseline_window_days = 14;
  std::int64_t prune_min_impressions = 20;
  double prune_max_percentile = 99.9;
  double letor_split = 0.8;  // train fraction, stratified by segment
  int top_candidates = 500;
  double recall_alpha = 0.7;
  rank::Bm25Params bm25;

  // train
  std::vector<ModelSpec> models;  // empty selects the full default roster
  rank::LambdaMartConfig lambdamart;
  rank::GbmConfig gbm;
  rank::RandomForestConfig rf;
  rank::RankNetConfig ranknet;

  // eval
  std::size_t k = 48;
  int bins = 5;
  std::string gain = "exponential";  // or "literal"
  std::vector<std::string> eval_targets = {"ctr", "atcr", "conv", "rpi"};

  std::vector<ModelSpec> model_roster() const;  // models, or the default set
  eval::GainKind gain_kind() const;
};

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);  // rejects unknown keys
ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& config, const std::string& path);

}  // namespace ltr::pipeline
