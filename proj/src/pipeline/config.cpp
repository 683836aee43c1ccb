#include "ltr/pipeline/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ltr::pipeline {

namespace {

// reads fields while tracking unknown keys, so config typos fail loudly
class Reader {
 public:
  Reader(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw std::invalid_argument("config: " + path_ + " must be an object");
  }
  ~Reader() = default;

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (j_.contains(key)) out = j_.at(key).get<T>();
  }
  bool has(const char* key) {
    seen_.insert(key);
    return j_.contains(key);
  }
  const nlohmann::json& raw(const char* key) {
    seen_.insert(key);
    return j_.at(key);
  }
  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.count(key)) {
        throw std::invalid_argument("config: unknown key '" + path_ + "." + key + "'");
      }
    }
  }

 private:
  const nlohmann::json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

}  // namespace

std::vector<ModelSpec> ExperimentConfig::model_roster() const {
  if (!models.empty()) return models;
  std::vector<ModelSpec> roster;
  for (const char* segment : {"all", "broad", "narrow"}) {
    roster.push_back({"lambdamart", "YYYY", "log_ctr", segment});
  }
  for (const char* mask : {"YNNY", "NYYN", "YNYY", "YYYN"}) {
    roster.push_back({"lambdamart", mask, "log_ctr", "all"});
  }
  for (const char* target : {"log_atcr", "log_conv", "log_rpi"}) {
    roster.push_back({"lambdamart", "YYYY", target, "all"});
  }
  for (const char* kind : {"rf", "gbm", "ranknet"}) {
    roster.push_back({kind, "YYYY", "log_ctr", "all"});
  }
  return roster;
}

eval::GainKind ExperimentConfig::gain_kind() const {
  if (gain == "exponential") return eval::GainKind::Exponential;
  if (gain == "literal") return eval::GainKind::Literal;
  throw std::invalid_argument("config: gain must be 'exponential' or 'literal'");
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["seed"] = c.seed;
  j["data"] = {
      {"source", c.source},
      {"catalogue_path", c.catalogue_path},
      {"sessions_path", c.sessions_path},
      {"queries_path", c.queries_path},
      {"synonyms_path", c.synonyms_path},
      {"generator",
       {{"n_products", c.generator.n_products},
        {"n_queries", c.generator.n_queries},
        {"broad_fraction", c.generator.broad_fraction},
        {"n_sessions", c.generator.n_sessions},
        {"days", c.generator.days},
        {"n_brands", c.generator.n_brands},
        {"n_colors", c.generator.n_colors},
        {"broad_traffic_share", c.generator.broad_traffic_share},
        {"broad_zipf", c.generator.broad_zipf},
        {"narrow_zipf", c.generator.narrow_zipf},
        {"min_impressions", c.generator.min_impressions},
        {"max_impressions", c.generator.max_impressions},
        {"position_bias_exponent", c.generator.position_bias_exponent},
        {"exposure_concentration", c.generator.exposure_concentration},
        {"broad_quality_weight", c.generator.broad_quality_weight},
        {"broad_match_weight", c.generator.broad_match_weight},
        {"narrow_quality_weight", c.generator.narrow_quality_weight},
        {"narrow_match_weight", c.generator.narrow_match_weight},
        {"click_bias", c.generator.click_bias},
        {"pair_noise", c.generator.pair_noise},
        {"narrow_brand_share", c.generator.narrow_brand_share},
        {"decorrelate_recall_size", c.generator.decorrelate_recall_size}}}};
  j["embed"] = {{"mf_dim", c.mf.dim},
                {"mf_epochs", c.mf.epochs},
                {"mf_learning_rate", c.mf.learning_rate},
                {"mf_regularization", c.mf.regularization},
                {"skipgram",
                 {{"dim", c.skipgram.dim},
                  {"window", c.skipgram.window},
                  {"negatives", c.skipgram.negatives},
                  {"epochs", c.skipgram.epochs},
                  {"min_count", c.skipgram.min_count},
                  {"learning_rate", c.skipgram.learning_rate},
                  {"max_documents", c.skipgram.max_documents}}}};
  j["segment"] = {{"threshold", c.threshold},
                  {"broad_cut", c.broad_cut},
                  {"narrow_cut", c.narrow_cut},
                  {"classifier_split", c.classifier_split},
                  {"svm_grid_search", c.svm_grid_search},
                  {"svm",
                   {{"C", c.svm.C},
                    {"gamma", c.svm.gamma},
                    {"tolerance", c.svm.tolerance},
                    {"max_iterations", c.svm.max_iterations}}}};
  j["featurize"] = {{"entity_window_days", c.entity_window_days},
                    {"baseline_window_days", c.baseline_window_days},
                    {"prune_min_impressions", c.prune_min_impressions},
                    {"prune_max_percentile", c.prune_max_percentile},
                    {"letor_split", c.letor_split},
                    {"top_candidates", c.top_candidates},
                    {"recall_alpha", c.recall_alpha},
                    {"bm25_k1", c.bm25.k1},
                    {"bm25_b", c.bm25.b},
                    {"dae",
                     {{"epochs", c.dae.epochs},
                      {"batch_size", c.dae.batch_size},
                      {"learning_rate", c.dae.learning_rate},
                      {"momentum", c.dae.momentum},
                      {"denoising", c.dae.denoising},
                      {"holdout_fraction", c.dae.holdout_fraction}}}};
  nlohmann::json models = nlohmann::json::array();
  for (const ModelSpec& m : c.models) {
    models.push_back(
        {{"kind", m.kind}, {"mask", m.mask}, {"target", m.target}, {"segment", m.segment}});
  }
  j["train"] = {{"models", std::move(models)},
                {"lambdamart",
                 {{"n_trees", c.lambdamart.n_trees},
                  {"learning_rate", c.lambdamart.learning_rate},
                  {"max_depth", c.lambdamart.tree.max_depth},
                  {"min_samples_leaf", c.lambdamart.tree.min_samples_leaf},
                  {"max_pairs_per_group", c.lambdamart.max_pairs_per_group}}},
                {"gbm",
                 {{"n_trees", c.gbm.n_trees},
                  {"learning_rate", c.gbm.learning_rate},
                  {"max_depth", c.gbm.tree.max_depth},
                  {"min_samples_leaf", c.gbm.tree.min_samples_leaf}}},
                {"rf",
                 {{"n_trees", c.rf.n_trees},
                  {"max_depth", c.rf.tree.max_depth},
                  {"min_samples_leaf", c.rf.tree.min_samples_leaf},
                  {"feature_fraction", c.rf.feature_fraction}}},
                {"ranknet",
                 {{"hidden", c.ranknet.hidden},
                  {"learning_rate", c.ranknet.learning_rate},
                  {"epochs", c.ranknet.epochs},
                  {"max_pairs_per_group", c.ranknet.max_pairs_per_group}}}};
  j["eval"] = {{"k", c.k}, {"bins", c.bins}, {"gain", c.gain}, {"targets", c.eval_targets}};
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  Reader root(j, "");
  root.get("seed", c.seed);

  if (root.has("data")) {
    Reader data(root.raw("data"), "data");
    data.get("source", c.source);
    data.get("catalogue_path", c.catalogue_path);
    data.get("sessions_path", c.sessions_path);
    data.get("queries_path", c.queries_path);
    data.get("synonyms_path", c.synonyms_path);
    if (data.has("generator")) {
      Reader g(data.raw("generator"), "data.generator");
      g.get("n_products", c.generator.n_products);
      g.get("n_queries", c.generator.n_queries);
      g.get("broad_fraction", c.generator.broad_fraction);
      g.get("n_sessions", c.generator.n_sessions);
      g.get("days", c.generator.days);
      g.get("n_brands", c.generator.n_brands);
      g.get("n_colors", c.generator.n_colors);
      g.get("broad_traffic_share", c.generator.broad_traffic_share);
      g.get("broad_zipf", c.generator.broad_zipf);
      g.get("narrow_zipf", c.generator.narrow_zipf);
      g.get("min_impressions", c.generator.min_impressions);
      g.get("max_impressions", c.generator.max_impressions);
      g.get("position_bias_exponent", c.generator.position_bias_exponent);
      g.get("exposure_concentration", c.generator.exposure_concentration);
      g.get("broad_quality_weight", c.generator.broad_quality_weight);
      g.get("broad_match_weight", c.generator.broad_match_weight);
      g.get("narrow_quality_weight", c.generator.narrow_quality_weight);
      g.get("narrow_match_weight", c.generator.narrow_match_weight);
      g.get("click_bias", c.generator.click_bias);
      g.get("pair_noise", c.generator.pair_noise);
      g.get("narrow_brand_share", c.generator.narrow_brand_share);
      g.get("decorrelate_recall_size", c.generator.decorrelate_recall_size);
      g.finish();
    }
    data.finish();
  }
  if (root.has("embed")) {
    Reader e(root.raw("embed"), "embed");
    e.get("mf_dim", c.mf.dim);
    e.get("mf_epochs", c.mf.epochs);
    e.get("mf_learning_rate", c.mf.learning_rate);
    e.get("mf_regularization", c.mf.regularization);
    if (e.has("skipgram")) {
      Reader s(e.raw("skipgram"), "embed.skipgram");
      s.get("dim", c.skipgram.dim);
      s.get("window", c.skipgram.window);
      s.get("negatives", c.skipgram.negatives);
      s.get("epochs", c.skipgram.epochs);
      s.get("min_count", c.skipgram.min_count);
      s.get("learning_rate", c.skipgram.learning_rate);
      s.get("max_documents", c.skipgram.max_documents);
      s.finish();
    }
    e.finish();
  }
  if (root.has("segment")) {
    Reader s(root.raw("segment"), "segment");
    s.get("threshold", c.threshold);
    s.get("broad_cut", c.broad_cut);
    s.get("narrow_cut", c.narrow_cut);
    s.get("classifier_split", c.classifier_split);
    s.get("svm_grid_search", c.svm_grid_search);
    if (s.has("svm")) {
      Reader v(s.raw("svm"), "segment.svm");
      v.get("C", c.svm.C);
      v.get("gamma", c.svm.gamma);
      v.get("tolerance", c.svm.tolerance);
      v.get("max_iterations", c.svm.max_iterations);
      v.finish();
    }
    s.finish();
  }
  if (root.has("featurize")) {
    Reader f(root.raw("featurize"), "featurize");
    f.get("entity_window_days", c.entity_window_days);
    f.get("baseline_window_days", c.baseline_window_days);
    f.get("prune_min_impressions", c.prune_min_impressions);
    f.get("prune_max_percentile", c.prune_max_percentile);
    f.get("letor_split", c.letor_split);
    f.get("top_candidates", c.top_candidates);
    f.get("recall_alpha", c.recall_alpha);
    f.get("bm25_k1", c.bm25.k1);
    f.get("bm25_b", c.bm25.b);
    if (f.has("dae")) {
      Reader d(f.raw("dae"), "featurize.dae");
      d.get("epochs", c.dae.epochs);
      d.get("batch_size", c.dae.batch_size);
      d.get("learning_rate", c.dae.learning_rate);
      d.get("momentum", c.dae.momentum);
      d.get("denoising", c.dae.denoising);
      d.get("holdout_fraction", c.dae.holdout_fraction);
      d.finish();
    }
    f.finish();
  }
  if (root.has("train")) {
    Reader t(root.raw("train"), "train");
    if (t.has("models")) {
      for (const auto& mj : t.raw("models")) {
        Reader m(mj, "train.models[]");
        ModelSpec spec;
        m.get("kind", spec.kind);
        m.get("mask", spec.mask);
        m.get("target", spec.target);
        m.get("segment", spec.segment);
        m.finish();
        c.models.push_back(std::move(spec));
      }
    }
    if (t.has("lambdamart")) {
      Reader l(t.raw("lambdamart"), "train.lambdamart");
      l.get("n_trees", c.lambdamart.n_trees);
      l.get("learning_rate", c.lambdamart.learning_rate);
      l.get("max_depth", c.lambdamart.tree.max_depth);
      l.get("min_samples_leaf", c.lambdamart.tree.min_samples_leaf);
      l.get("max_pairs_per_group", c.lambdamart.max_pairs_per_group);
      l.finish();
    }
    if (t.has("gbm")) {
      Reader g(t.raw("gbm"), "train.gbm");
      g.get("n_trees", c.gbm.n_trees);
      g.get("learning_rate", c.gbm.learning_rate);
      g.get("max_depth", c.gbm.tree.max_depth);
      g.get("min_samples_leaf", c.gbm.tree.min_samples_leaf);
      g.finish();
    }
    if (t.has("rf")) {
      Reader r(t.raw("rf"), "train.rf");
      r.get("n_trees", c.rf.n_trees);
      r.get("max_depth", c.rf.tree.max_depth);
      r.get("min_samples_leaf", c.rf.tree.min_samples_leaf);
      r.get("feature_fraction", c.rf.feature_fraction);
      r.finish();
    }
    if (t.has("ranknet")) {
      Reader r(t.raw("ranknet"), "train.ranknet");
      r.get("hidden", c.ranknet.hidden);
      r.get("learning_rate", c.ranknet.learning_rate);
      r.get("epochs", c.ranknet.epochs);
      r.get("max_pairs_per_group", c.ranknet.max_pairs_per_group);
      r.finish();
    }
    t.finish();
  }
  if (root.has("eval")) {
    Reader e(root.raw("eval"), "eval");
    e.get("k", c.k);
    e.get("bins", c.bins);
    e.get("gain", c.gain);
    e.get("targets", c.eval_targets);
    e.finish();
  }
  root.finish();
  c.gain_kind();  // validates
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  return config_from_json(j);
}

void save_config(const ExperimentConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file: " + path);
  out << config_to_json(config).dump(1) << '\n';
}

}  // namespace ltr::pipeline
