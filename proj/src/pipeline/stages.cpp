#include "ltr/pipeline/stages.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "ltr/eval/report_io.hpp"
#include "ltr/featurize/onehot.hpp"
#include "ltr/featurize/popularity.hpp"
#include "ltr/rank/bm25.hpp"
#include "ltr/rng.hpp"

namespace fs = std::filesystem;

namespace ltr::pipeline {

namespace {

std::string raw_metric_of(const std::string& target) {
  if (target.rfind("log_", 0) == 0) return target.substr(4);
  return target;
}

// stratified train flag per index; keys define the strata
std::vector<bool> stratified_split(const std::vector<std::string>& keys, double train_fraction,
                                   std::uint64_t seed) {
  std::vector<bool> is_train(keys.size(), false);
  std::map<std::string, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < keys.size(); ++i) strata[keys[i]].push_back(i);
  auto rng = make_rng(seed);
  for (auto& [key, idx] : strata) {
    ltr::shuffle(idx, rng);
    const std::size_t n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(idx.size())));
    for (std::size_t i = 0; i < idx.size(); ++i) is_train[idx[i]] = i < n_train;
  }
  return is_train;
}

}  // namespace

EmbeddingBundle build_embeddings(const std::vector<corpus::SessionLog>& sessions,
                                 const corpus::Catalogue& catalogue,
                                 const embed::SynonymMap& synonyms,
                                 const ExperimentConfig& config) {
  EmbeddingBundle bundle;
  const auto matrix = embed::click_matrix_from_logs(sessions);
  auto mf = embed::mf_train(matrix, config.mf, derive_seed(config.seed, "mf"));
  bundle.mf = std::move(mf.product_vectors);
  embed::add_missing_products(bundle.mf, catalogue);

  const auto docs = embed::build_documents(sessions, catalogue, synonyms);
  auto sg = embed::skipgram_train(docs, config.skipgram, derive_seed(config.seed, "skipgram"));
  bundle.w2v = std::move(sg.table);
  return bundle;
}

SegmentationResult segment_queries(const std::vector<corpus::SyntheticQuery>& queries,
                                   const EmbeddingBundle& embeddings,
                                   const corpus::Catalogue& catalogue,
                                   const ExperimentConfig& config) {
  SegmentationResult result;
  const auto vocab = segment::AttributeVocabulary::from_catalogue(catalogue);

  // coherency scores from the MF product space
  result.scores.reserve(queries.size());
  for (const corpus::SyntheticQuery& q : queries) {
    std::vector<VecD> vectors;
    for (ProductId pid : q.recall_set) {
      const std::string key = std::to_string(pid);
      if (embeddings.mf.contains(key) && !embeddings.mf.flagged(key)) {
        vectors.push_back(embeddings.mf.at(key));
      }
    }
    const double score = vectors.empty() ? 0.0 : segment::coherency_score(vectors).score;
    result.scores.push_back(score);
    result.threshold_labels.push_back(segment::threshold_label(score, config.threshold));
    result.heuristic_labels.push_back(
        segment::heuristic_label(score, config.broad_cut, config.narrow_cut));
  }

  // classifier features
  MatD rows(static_cast<Eigen::Index>(queries.size()),
            embeddings.w2v.dimension() + static_cast<Eigen::Index>(segment::QueryFeatures::scalar_count()));
  for (std::size_t i = 0; i < queries.size(); ++i) {
    corpus::QueryRecord record{queries[i].text, queries[i].recall_set};
    const auto qf = segment::extract_query_features(record, embeddings.w2v, vocab);
    rows.row(static_cast<Eigen::Index>(i)) = qf.numeric().transpose();
  }

  // 70:30 stratified split over heuristic labels (the "none" stratum too)
  std::vector<std::string> strata(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    strata[i] = result.heuristic_labels[i]
                    ? segment::to_string(*result.heuristic_labels[i])
                    : "none";
  }
  const auto is_train =
      stratified_split(strata, config.classifier_split, derive_seed(config.seed, "segment-split"));

  std::vector<Eigen::Index> train_rows;
  std::vector<segment::SegmentLabel> train_labels;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (is_train[i] && result.heuristic_labels[i]) {
      train_rows.push_back(static_cast<Eigen::Index>(i));
      train_labels.push_back(*result.heuristic_labels[i]);
    }
  }
  const bool both = std::count(train_labels.begin(), train_labels.end(),
                               segment::SegmentLabel::Broad) > 0 &&
                    std::count(train_labels.begin(), train_labels.end(),
                               segment::SegmentLabel::Narrow) > 0;

  if (both) {
    MatD x(static_cast<Eigen::Index>(train_rows.size()), rows.cols());
    for (std::size_t i = 0; i < train_rows.size(); ++i) x.row(static_cast<Eigen::Index>(i)) = rows.row(train_rows[i]);
    segment::SvmConfig svm_cfg = config.svm;
    if (config.svm_grid_search) {
      const auto pick = segment::svm_grid_select(x, train_labels, {0.1, 1.0, 10.0},
                                                 {0.01, 0.1, 1.0}, config.seed);
      svm_cfg.C = pick.C;
      svm_cfg.gamma = pick.gamma;
    }
    result.svm = segment::svm_train(x, train_labels, svm_cfg, derive_seed(config.seed, "svm"));
    result.svm_used = true;
  }

  std::size_t svm_hits = 0, thr_hits = 0;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const segment::SegmentLabel label =
        result.svm_used ? result.svm.predict(rows.row(static_cast<Eigen::Index>(i)).transpose())
                        : result.threshold_labels[i];
    result.predicted.push_back(label);
    if (!is_train[i]) {
      const segment::SegmentLabel truth = queries[i].truth == corpus::QueryClass::Broad
                                              ? segment::SegmentLabel::Broad
                                              : segment::SegmentLabel::Narrow;
      result.holdout_size += 1;
      svm_hits += label == truth ? 1 : 0;
      thr_hits += result.threshold_labels[i] == truth ? 1 : 0;
    }
  }
  if (result.holdout_size > 0) {
    result.svm_holdout_accuracy = static_cast<double>(svm_hits) / result.holdout_size;
    result.threshold_holdout_accuracy = static_cast<double>(thr_hits) / result.holdout_size;
  }
  return result;
}

FeatureBundle build_features(const std::vector<corpus::SyntheticQuery>& queries,
                             const std::vector<segment::SegmentLabel>& segments,
                             const std::vector<corpus::SessionLog>& sessions,
                             const corpus::Catalogue& catalogue,
                             const corpus::AggregateMap& aggregates,
                             const EmbeddingBundle& embeddings, const ExperimentConfig& config) {
  FeatureBundle bundle;
  const auto vocab = segment::AttributeVocabulary::from_catalogue(catalogue);

  // autoencoder codes per product
  std::map<ProductId, VecD> codes;
  for (const std::string& category : featurize::master_categories(catalogue)) {
    featurize::OneHotVocab onehot_vocab(catalogue, category);
    std::vector<ProductId> members;
    for (const corpus::Product& p : catalogue.products()) {
      if (featurize::master_category(p) == category) members.push_back(p.product_id);
    }
    RowMatD onehots(static_cast<Eigen::Index>(members.size()),
                    static_cast<Eigen::Index>(onehot_vocab.dimension()));
    for (std::size_t i = 0; i < members.size(); ++i) {
      onehots.row(static_cast<Eigen::Index>(i)) =
          onehot_vocab.onehot(catalogue.by_id(members[i])).bits.transpose();
    }
    auto dae =
        featurize::dae_train(onehots, config.dae, derive_seed(config.seed, "dae-" + category));
    dae.model.category = category;
    for (std::size_t i = 0; i < members.size(); ++i) {
      codes[members[i]] = dae.model.encode(onehots.row(static_cast<Eigen::Index>(i)).transpose());
    }
    bundle.autoencoders.push_back(std::move(dae.model));
  }

  bundle.baseline = rank::BaselineScorer(sessions, catalogue, config.baseline_window_days);
  const rank::Bm25Index bm25_index(catalogue, config.bm25);
  const featurize::QpPopularityIndex qp_index(sessions, catalogue, config.entity_window_days);
  const auto brand_pop =
      featurize::entity_popularity(sessions, catalogue, featurize::Entity::Brand,
                                   config.entity_window_days);
  const auto at_pop =
      featurize::entity_popularity(sessions, catalogue, featurize::Entity::ArticleType,
                                   config.entity_window_days);

  featurize::FeatureSchema schema;
  schema.query_embedding_dim = embeddings.w2v.dimension();
  schema.phys_dim = bundle.autoencoders.empty()
                        ? 32
                        : bundle.autoencoders.front().code_dim();

  // per-query blocks
  std::vector<VecD> query_blocks(queries.size());
  std::vector<VecD> query_vecs(queries.size());
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    corpus::QueryRecord record{queries[qi].text, queries[qi].recall_set};
    const auto qf = segment::extract_query_features(record, embeddings.w2v, vocab);
    query_blocks[qi] = qf.numeric();
    query_vecs[qi] = qf.embedding;
  }
  // per-product w2v vectors
  std::map<ProductId, VecD> product_vecs;
  for (const corpus::Product& p : catalogue.products()) {
    product_vecs[p.product_id] = embed::product_vector(p, embeddings.w2v).vector;
  }

  auto entity_stats = [](const std::map<std::string, featurize::EntityStats>& m,
                         const std::string& key) {
    auto it = m.find(key);
    return it == m.end() ? featurize::EntityStats{} : it->second;
  };

  auto make_row = [&](std::size_t qi, ProductId pid) {
    const corpus::Product& p = catalogue.by_id(pid);
    featurize::FeatureBlocks blocks;
    blocks.query = query_blocks[qi];
    blocks.query_product = VecD::Zero(featurize::FeatureSchema::qp_dim());
    blocks.query_product[0] = featurize::relevance_score(query_vecs[qi], product_vecs.at(pid));
    const auto qb = qp_index.get(queries[qi].text, featurize::Entity::Brand, p.brand());
    const auto qa = qp_index.get(queries[qi].text, featurize::Entity::ArticleType, p.article_type());
    blocks.query_product[1] = qb.revenue;
    blocks.query_product[2] = static_cast<double>(qb.quantity);
    blocks.query_product[3] = qb.ctr();
    blocks.query_product[4] = qa.revenue;
    blocks.query_product[5] = static_cast<double>(qa.quantity);
    blocks.query_product[6] = qa.ctr();
    const auto pb = entity_stats(brand_pop, p.brand());
    const auto pa = entity_stats(at_pop, p.article_type());
    blocks.popularity = VecD::Zero(featurize::FeatureSchema::pop_dim());
    blocks.popularity[0] = pb.revenue;
    blocks.popularity[1] = static_cast<double>(pb.quantity);
    blocks.popularity[2] = pb.ctr();
    blocks.popularity[3] = pa.revenue;
    blocks.popularity[4] = static_cast<double>(pa.quantity);
    blocks.popularity[5] = pa.ctr();
    blocks.physical = codes.at(pid);
    return assemble(featurize::FeatureMask{}, blocks, schema);  // full YYYY row
  };

  // 80:20 stratified by predicted segment
  std::vector<std::string> strata(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) strata[i] = segment::to_string(segments[i]);
  const auto is_train =
      stratified_split(strata, config.letor_split, derive_seed(config.seed, "letor-split"));

  // per-query aggregate spans (AggregateMap is sorted by (query, product))
  std::map<std::string, std::size_t> query_index;
  for (std::size_t i = 0; i < queries.size(); ++i) query_index[queries[i].text] = i;

  // train rows with pruning
  {
    std::vector<std::tuple<std::size_t, ProductId, const corpus::QueryProductAggregate*>> rows;
    std::vector<std::int64_t> impressions;
    for (const auto& [key, agg] : aggregates) {
      auto it = query_index.find(key.first);
      if (it == query_index.end() || !is_train[it->second]) continue;
      rows.push_back({it->second, key.second, &agg});
      impressions.push_back(agg.impressions);
    }
    const std::int64_t max_cut =
        featurize::impressions_percentile(impressions, config.prune_max_percentile);
    const auto keep =
        featurize::prune(impressions, config.prune_min_impressions, std::max(max_cut, config.prune_min_impressions + 1));

    featurize::FeatureDataset& ds = bundle.train_set;
    ds.schema = schema;
    std::map<std::size_t, std::size_t> local_qid;
    ds.features.resize(static_cast<Eigen::Index>(keep.size()), schema.total());
    for (std::size_t k = 0; k < keep.size(); ++k) {
      const auto& [qi, pid, agg] = rows[keep[k]];
      auto [lit, inserted] = local_qid.emplace(qi, ds.queries.size());
      if (inserted) {
        ds.queries.push_back(queries[qi].text);
        ds.query_segments.push_back(segment::to_string(segments[qi]));
      }
      ds.row_query.push_back(lit->second);
      ds.row_product.push_back(pid);
      ds.features.row(static_cast<Eigen::Index>(k)) = make_row(qi, pid).transpose();
      ds.targets.push_back(featurize::compute_targets(*agg));
    }
  }

  // test rows: top candidates by blended recall score
  {
    featurize::FeatureDataset& ds = bundle.test_set;
    ds.schema = schema;
    std::vector<std::vector<double>> feature_rows;
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
      if (is_train[qi]) continue;
      auto pool = bm25_index.top_k(queries[qi].text, 1000);
      if (pool.empty()) continue;
      double lo = pool.front().second, hi = pool.front().second;
      for (const auto& [pid, s] : pool) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      std::vector<std::pair<ProductId, double>> blended;
      blended.reserve(pool.size());
      for (const auto& [pid, s] : pool) {
        const double norm = hi > lo ? (s - lo) / (hi - lo) : 0.0;
        blended.push_back(
            {pid, rank::recall_score(norm, bundle.baseline.score(pid), config.recall_alpha)});
      }
      std::sort(blended.begin(), blended.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
      });
      if (blended.size() > static_cast<std::size_t>(config.top_candidates)) {
        blended.resize(static_cast<std::size_t>(config.top_candidates));
      }
      std::sort(blended.begin(), blended.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      const std::size_t local = ds.queries.size();
      ds.queries.push_back(queries[qi].text);
      ds.query_segments.push_back(segment::to_string(segments[qi]));
      for (const auto& [pid, _] : blended) {
        ds.row_query.push_back(local);
        ds.row_product.push_back(pid);
        const VecD row = make_row(qi, pid);
        feature_rows.emplace_back(row.data(), row.data() + row.size());
        auto ait = aggregates.find({queries[qi].text, pid});
        if (ait != aggregates.end() && ait->second.impressions > 0) {
          ds.targets.push_back(featurize::compute_targets(ait->second));
        } else {
          ds.targets.push_back(featurize::TargetRow{});
        }
      }
    }
    ds.features.resize(static_cast<Eigen::Index>(feature_rows.size()), schema.total());
    for (std::size_t r = 0; r < feature_rows.size(); ++r) {
      for (int c = 0; c < schema.total(); ++c) {
        ds.features(static_cast<Eigen::Index>(r), c) = feature_rows[r][static_cast<std::size_t>(c)];
      }
    }
  }
  return bundle;
}

rank::RankData make_rank_data(const featurize::FeatureDataset& dataset, const std::string& target,
                              const std::string& segment, int bins) {
  const std::string raw = raw_metric_of(target);
  rank::RankData data;
  std::vector<std::size_t> kept_rows;
  std::vector<double> kept_targets;

  for (std::size_t qid = 0; qid < dataset.queries.size(); ++qid) {
    if (segment != "all" && dataset.query_segments[qid] != segment) continue;
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < dataset.rows(); ++r) {
      if (dataset.row_query[r] != qid) continue;
      if (target == "log_atcr" && !dataset.targets[r].atcr) continue;  // undefined rows excluded
      rows.push_back(r);
    }
    if (rows.empty()) continue;

    std::vector<double> raw_values;
    raw_values.reserve(rows.size());
    for (std::size_t r : rows) {
      raw_values.push_back(featurize::target_value(dataset.targets[r], raw).value_or(0.0));
    }
    const auto grades = eval::bin_grades(raw_values, bins);

    rank::RankData::Group group;
    group.query = dataset.queries[qid];
    group.begin = kept_rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      kept_rows.push_back(rows[i]);
      kept_targets.push_back(
          featurize::target_value(dataset.targets[rows[i]], target).value_or(0.0));
      data.grades.push_back(grades ? (*grades)[i] : 0);
      data.product_ids.push_back(dataset.row_product[rows[i]]);
    }
    group.end = kept_rows.size();
    data.groups.push_back(std::move(group));
  }

  data.features.resize(static_cast<Eigen::Index>(kept_rows.size()), dataset.features.cols());
  data.targets.resize(static_cast<Eigen::Index>(kept_rows.size()));
  for (std::size_t i = 0; i < kept_rows.size(); ++i) {
    data.features.row(static_cast<Eigen::Index>(i)) =
        dataset.features.row(static_cast<Eigen::Index>(kept_rows[i]));
    data.targets[static_cast<Eigen::Index>(i)] = kept_targets[i];
  }
  return data;
}

std::vector<eval::TestGroup> make_test_groups(const featurize::FeatureDataset& dataset,
                                              const std::vector<std::string>& metrics) {
  std::vector<eval::TestGroup> groups(dataset.queries.size());
  std::vector<std::vector<std::size_t>> rows_of(dataset.queries.size());
  for (std::size_t r = 0; r < dataset.rows(); ++r) rows_of[dataset.row_query[r]].push_back(r);

  for (std::size_t qid = 0; qid < dataset.queries.size(); ++qid) {
    eval::TestGroup& g = groups[qid];
    g.query = dataset.queries[qid];
    g.segment = dataset.query_segments[qid];
    const auto& rows = rows_of[qid];
    g.features.resize(static_cast<Eigen::Index>(rows.size()), dataset.features.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      g.products.push_back(dataset.row_product[rows[i]]);
      g.features.row(static_cast<Eigen::Index>(i)) =
          dataset.features.row(static_cast<Eigen::Index>(rows[i]));
    }
    for (const std::string& metric : metrics) {
      auto& values = g.metrics[metric];
      values.reserve(rows.size());
      for (std::size_t r : rows) {
        const auto& t = dataset.targets[r];
        if (t.impressions <= 0) {
          values.push_back(0.0);
        } else {
          values.push_back(featurize::target_value(t, metric).value_or(0.0));
        }
      }
    }
  }
  return groups;
}

rank::RankModel baseline_model(const rank::BaselineScorer& scorer) {
  rank::RankModel model;
  model.kind = rank::ModelKind::Baseline;
  model.mask = "NNNN";
  model.target = "popularity";
  model.segment = "all";
  model.product_scores = scorer.scores();
  return model;
}

rank::RankModel train_model(const ModelSpec& spec, const featurize::FeatureDataset& train_set,
                            const ExperimentConfig& config) {
  const rank::RankData data = make_rank_data(train_set, spec.target, spec.segment, config.bins);
  if (data.rows() == 0) {
    throw std::runtime_error("no training rows for model " + spec.name());
  }
  const featurize::FeatureMask mask = featurize::FeatureMask::from_code(spec.mask);
  const std::vector<int> active = train_set.schema.active_columns(mask);
  const std::uint64_t seed = derive_seed(config.seed, "train-" + spec.name());

  rank::RankModel model;
  model.kind = rank::model_kind_from_string(spec.kind);
  model.mask = spec.mask;
  model.target = spec.target;
  model.segment = spec.segment;
  model.seed = seed;
  model.feature_dim = train_set.schema.total();

  switch (model.kind) {
    case rank::ModelKind::LambdaMart: {
      rank::LambdaMartConfig cfg = config.lambdamart;
      cfg.k = static_cast<int>(config.k);
      cfg.gain = config.gain_kind();
      auto r = rank::lambdamart_train(data, active, cfg, seed);
      model.trees = std::move(r.trees);
      model.shrinkage = r.shrinkage;
      model.base_score = 0.0;
      model.hyperparameters = {{"n_trees", static_cast<double>(cfg.n_trees)},
                               {"learning_rate", cfg.learning_rate},
                               {"max_depth", static_cast<double>(cfg.tree.max_depth)},
                               {"k", static_cast<double>(cfg.k)}};
      break;
    }
    case rank::ModelKind::Gbm: {
      auto r = rank::gbm_train(data, active, config.gbm, seed);
      model.trees = std::move(r.trees);
      model.base_score = r.base_score;
      model.shrinkage = r.shrinkage;
      model.hyperparameters = {{"n_trees", static_cast<double>(config.gbm.n_trees)},
                               {"learning_rate", config.gbm.learning_rate},
                               {"max_depth", static_cast<double>(config.gbm.tree.max_depth)}};
      break;
    }
    case rank::ModelKind::RandomForest: {
      auto r = rank::rf_train(data, active, config.rf, seed);
      model.trees = std::move(r.trees);
      model.average_trees = true;
      model.shrinkage = 1.0;
      model.hyperparameters = {{"n_trees", static_cast<double>(config.rf.n_trees)},
                               {"max_depth", static_cast<double>(config.rf.tree.max_depth)},
                               {"feature_fraction", config.rf.feature_fraction},
                               {"oob_error", r.oob_error}};
      break;
    }
    case rank::ModelKind::RankNet: {
      auto r = rank::ranknet_train(data, active, config.ranknet, seed);
      model.mlp = std::move(r.mlp);
      model.active_features = active;
      model.hyperparameters = {{"epochs", static_cast<double>(config.ranknet.epochs)},
                               {"learning_rate", config.ranknet.learning_rate}};
      break;
    }
    case rank::ModelKind::Baseline:
      throw std::invalid_argument("baseline is not a trainable model kind");
  }
  return model;
}

// ---------------------------------------------------------------------------
// file-based stages

const std::vector<std::string> kStageOrder = {"generate", "aggregate", "embed",    "segment",
                                              "featurize", "train",     "evaluate", "report"};

namespace {

class Runner {
 public:
  Runner(const ExperimentConfig& config, fs::path out)
      : cfg_(config), out_(std::move(out)) {
    fs::create_directories(out_);
    for (const char* d : {"data", "aggregates", "embed", "segment", "features", "models", "eval",
                          "report"}) {
      fs::create_directories(out_ / d);
    }
    save_config(cfg_, (out_ / "config.json").string());
    prev_ = Manifest::load((out_ / "manifest.json").string());
    current_ = prev_;
    current_.config_hash = sha256_hex(config_to_json(cfg_).dump());
    log_.open(out_ / "logs.txt", std::ios::app);
  }

  std::vector<StageStatus> run(const std::vector<std::string>& only) {
    std::vector<StageStatus> statuses;
    for (const std::string& name : kStageOrder) {
      if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
      statuses.push_back(run_stage(name));
    }
    current_.save((out_ / "manifest.json").string());
    return statuses;
  }

 private:
  std::string path(const std::string& rel) const { return (out_ / rel).string(); }

  nlohmann::json stage_config(const std::string& name) const {
    const nlohmann::json full = config_to_json(cfg_);
    nlohmann::json j;
    j["seed"] = cfg_.seed;
    if (name == "generate") j["data"] = full.at("data");
    if (name == "embed") j["embed"] = full.at("embed");
    if (name == "segment") j["segment"] = full.at("segment");
    if (name == "featurize") {
      j["featurize"] = full.at("featurize");
      j["bins"] = cfg_.bins;
    }
    if (name == "train") {
      j["train"] = full.at("train");
      j["eval"] = full.at("eval");
    }
    if (name == "evaluate") {
      j["eval"] = full.at("eval");
      j["featurize"] = full.at("featurize");
    }
    return j;
  }

  struct Io {
    std::vector<std::string> inputs;   // relative paths
    std::vector<std::string> outputs;  // relative paths
  };

  Io stage_io(const std::string& name) const {
    if (name == "generate") {
      Io io;
      if (cfg_.source == "files") {
        io.inputs = {cfg_.catalogue_path, cfg_.sessions_path, cfg_.queries_path};
        if (!cfg_.synonyms_path.empty()) io.inputs.push_back(cfg_.synonyms_path);
      }
      io.outputs = {"data/catalogue.tsv", "data/sessions.tsv", "data/queries.tsv",
                    "data/synonyms.tsv"};
      if (cfg_.source == "synthetic") io.outputs.push_back("data/oracle.json");
      return io;
    }
    if (name == "aggregate") {
      return {{"data/sessions.tsv"}, {"aggregates/aggregates.tsv"}};
    }
    if (name == "embed") {
      return {{"data/sessions.tsv", "data/catalogue.tsv", "data/synonyms.tsv"},
              {"embed/mf.emb", "embed/skipgram.emb"}};
    }
    if (name == "segment") {
      return {{"data/queries.tsv", "data/catalogue.tsv", "embed/mf.emb", "embed/skipgram.emb"},
              {"segment/scores.tsv", "segment/predictions.tsv", "segment/segment_report.json",
               "segment/svm.json"}};
    }
    if (name == "featurize") {
      Io io;
      io.inputs = {"data/queries.tsv",       "data/catalogue.tsv", "data/sessions.tsv",
                   "aggregates/aggregates.tsv", "embed/skipgram.emb", "segment/predictions.tsv"};
      io.outputs = {"features/train.tsv", "features/test.tsv", "features/daes.json"};
      return io;
    }
    if (name == "train") {
      Io io;
      io.inputs = {"features/train.tsv"};
      for (const ModelSpec& spec : cfg_.model_roster()) {
        io.outputs.push_back("models/" + spec.name() + ".json");
      }
      return io;
    }
    if (name == "evaluate") {
      Io io;
      io.inputs = {"features/test.tsv", "data/sessions.tsv", "data/catalogue.tsv"};
      for (const ModelSpec& spec : cfg_.model_roster()) {
        io.inputs.push_back("models/" + spec.name() + ".json");
      }
      io.outputs = {"eval/report.json", "eval/baseline.json"};
      return io;
    }
    if (name == "report") {
      return {{"eval/report.json"}, {"report/report.txt", "report/figure5.svg"}};
    }
    throw std::invalid_argument("unknown stage: " + name);
  }

  StageStatus run_stage(const std::string& name) {
    const auto t0 = std::chrono::steady_clock::now();
    StageStatus status;
    status.name = name;

    const Io io = stage_io(name);
    const std::string cfg_hash = sha256_hex(stage_config(name).dump());

    std::map<std::string, std::string> input_hashes;
    try {
      for (const std::string& in : io.inputs) {
        const std::string full = in.front() == '/' ? in : path(in);
        input_hashes[in] = sha256_file(full);
      }
    } catch (const std::exception& e) {
      throw StageError(name, std::string(e.what()) +
                                 " (an earlier stage's output is missing; run it first)");
    }

    // cache check
    auto pit = prev_.stages.find(name);
    bool cached = pit != prev_.stages.end() && pit->second.config_hash == cfg_hash &&
                  pit->second.inputs == input_hashes;
    if (cached) {
      for (const auto& [rel, hash] : pit->second.outputs) {
        if (!fs::exists(path(rel)) || sha256_file(path(rel)) != hash) {
          cached = false;
          break;
        }
      }
    }
    if (cached) {
      current_.stages[name] = pit->second;
      status.cached = true;
      log_line(name, "cached", 0.0);
      return status;
    }

    try {
      execute(name);
    } catch (const StageError&) {
      log_line(name, "failed", elapsed_ms(t0));
      throw;
    } catch (const std::exception& e) {
      log_line(name, "failed", elapsed_ms(t0));
      throw StageError(name, e.what());
    }

    Manifest::Stage entry;
    entry.config_hash = cfg_hash;
    entry.inputs = std::move(input_hashes);
    for (const std::string& out : io.outputs) entry.outputs[out] = sha256_file(path(out));
    current_.stages[name] = std::move(entry);
    status.duration_ms = elapsed_ms(t0);
    log_line(name, "run", status.duration_ms);
    return status;
  }

  static double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }

  void log_line(const std::string& stage, const std::string& outcome, double ms) {
    log_ << "stage=" << stage << " status=" << outcome << " seed=" << cfg_.seed
         << " duration_ms=" << static_cast<long long>(ms) << '\n';
    log_.flush();
  }

  void execute(const std::string& name) {
    if (name == "generate") return do_generate();
    if (name == "aggregate") return do_aggregate();
    if (name == "embed") return do_embed();
    if (name == "segment") return do_segment();
    if (name == "featurize") return do_featurize();
    if (name == "train") return do_train();
    if (name == "evaluate") return do_evaluate();
    if (name == "report") return do_report();
  }

  void do_generate() {
    if (cfg_.source == "synthetic") {
      const auto data = corpus::generate_synthetic(cfg_.generator, derive_seed(cfg_.seed, "generate"));
      corpus::save_catalogue(data.catalogue, path("data/catalogue.tsv"));
      corpus::save_sessions(data.sessions, path("data/sessions.tsv"));
      corpus::save_queries(data.queries, path("data/queries.tsv"));
      corpus::save_synonyms(data.synonyms, path("data/synonyms.tsv"));
      nlohmann::json oracle;
      oracle["position_bias"] = data.oracle.position_bias;
      nlohmann::json pairs = nlohmann::json::array();
      for (std::size_t qi = 0; qi < data.oracle.pairs.size(); ++qi) {
        nlohmann::json qj = nlohmann::json::object();
        for (const auto& [pid, t] : data.oracle.pairs[qi]) {
          qj[std::to_string(pid)] = {t.attractiveness, t.cart_given_click, t.buy_given_cart};
        }
        pairs.push_back(std::move(qj));
      }
      oracle["pairs"] = std::move(pairs);
      std::ofstream out(path("data/oracle.json"));
      out << oracle.dump() << '\n';
    } else if (cfg_.source == "files") {
      // normalize external files into the canonical formats
      corpus::save_catalogue(corpus::load_catalogue(cfg_.catalogue_path), path("data/catalogue.tsv"));
      corpus::save_sessions(corpus::load_sessions(cfg_.sessions_path), path("data/sessions.tsv"));
      corpus::save_queries(corpus::load_queries(cfg_.queries_path), path("data/queries.tsv"));
      embed::SynonymMap synonyms;
      if (!cfg_.synonyms_path.empty()) synonyms = embed::load_synonyms(cfg_.synonyms_path);
      corpus::save_synonyms(synonyms, path("data/synonyms.tsv"));
    } else {
      throw std::invalid_argument("data.source must be 'synthetic' or 'files'");
    }
  }

  void do_aggregate() {
    const auto sessions = corpus::load_sessions(path("data/sessions.tsv"));
    corpus::save_aggregates(corpus::aggregate(sessions), path("aggregates/aggregates.tsv"));
  }

  void do_embed() {
    const auto sessions = corpus::load_sessions(path("data/sessions.tsv"));
    const auto catalogue = corpus::load_catalogue(path("data/catalogue.tsv"));
    const auto synonyms = embed::load_synonyms(path("data/synonyms.tsv"));
    const auto bundle = build_embeddings(sessions, catalogue, synonyms, cfg_);
    embed::save_embedding(bundle.mf, path("embed/mf.emb"));
    embed::save_embedding(bundle.w2v, path("embed/skipgram.emb"));
  }

  void do_segment() {
    const auto queries = corpus::load_queries(path("data/queries.tsv"));
    const auto catalogue = corpus::load_catalogue(path("data/catalogue.tsv"));
    EmbeddingBundle bundle;
    bundle.mf = embed::load_embedding(path("embed/mf.emb"));
    bundle.w2v = embed::load_embedding(path("embed/skipgram.emb"));
    const auto seg = segment_queries(queries, bundle, catalogue, cfg_);

    std::ofstream scores(path("segment/scores.tsv"));
    std::ofstream preds(path("segment/predictions.tsv"));
    for (std::size_t i = 0; i < queries.size(); ++i) {
      scores << queries[i].text << '\t' << corpus::format_f6(seg.scores[i]) << '\t'
             << segment::to_string(seg.threshold_labels[i]) << '\n';
      preds << queries[i].text << '\t' << segment::to_string(seg.predicted[i]) << '\n';
    }
    scores.close();
    preds.close();
    if (seg.svm_used) {
      segment::save_svm(seg.svm, path("segment/svm.json"));
    } else {
      std::ofstream out(path("segment/svm.json"));
      out << "{\"magic\":\"LTRSVM-NONE\"}\n";
    }
    nlohmann::json report;
    report["svm_used"] = seg.svm_used;
    report["svm_holdout_accuracy"] = seg.svm_holdout_accuracy;
    report["threshold_holdout_accuracy"] = seg.threshold_holdout_accuracy;
    report["holdout_size"] = seg.holdout_size;
    if (seg.svm_used) {
      report["svm_converged"] = seg.svm.converged;
      report["svm_final_violation"] = seg.svm.final_violation;
    }
    std::ofstream out(path("segment/segment_report.json"));
    out << report.dump(1) << '\n';
  }

  void do_featurize() {
    const auto queries = corpus::load_queries(path("data/queries.tsv"));
    const auto catalogue = corpus::load_catalogue(path("data/catalogue.tsv"));
    const auto sessions = corpus::load_sessions(path("data/sessions.tsv"));
    const auto aggregates = corpus::load_aggregates(path("aggregates/aggregates.tsv"));
    EmbeddingBundle bundle;
    bundle.w2v = embed::load_embedding(path("embed/skipgram.emb"));

    // predicted labels
    std::vector<segment::SegmentLabel> labels(queries.size(), segment::SegmentLabel::Narrow);
    {
      std::ifstream in(path("segment/predictions.tsv"));
      std::map<std::string, segment::SegmentLabel> by_query;
      std::string line;
      while (std::getline(in, line)) {
        const auto tab = line.rfind('\t');
        if (tab == std::string::npos) continue;
        by_query[line.substr(0, tab)] = line.substr(tab + 1) == "broad"
                                            ? segment::SegmentLabel::Broad
                                            : segment::SegmentLabel::Narrow;
      }
      for (std::size_t i = 0; i < queries.size(); ++i) {
        auto it = by_query.find(queries[i].text);
        if (it != by_query.end()) labels[i] = it->second;
      }
    }

    const auto features =
        build_features(queries, labels, sessions, catalogue, aggregates, bundle, cfg_);
    featurize::save_feature_dataset(features.train_set, path("features/train.tsv"));
    featurize::save_feature_dataset(features.test_set, path("features/test.tsv"));
    nlohmann::json daes = nlohmann::json::array();
    for (const auto& dae : features.autoencoders) daes.push_back(featurize::autoencoder_to_json(dae));
    std::ofstream out(path("features/daes.json"));
    out << daes.dump() << '\n';
  }

  void do_train() {
    const auto train_set = featurize::load_feature_dataset(path("features/train.tsv"));
    for (const ModelSpec& spec : cfg_.model_roster()) {
      rank::RankModel model = train_model(spec, train_set, cfg_);
      rank::save_model(model, path("models/" + spec.name() + ".json"));
    }
  }

  void do_evaluate() {
    for (const ModelSpec& spec : cfg_.model_roster()) {
      if (!fs::exists(path("models/" + spec.name() + ".json"))) {
        throw std::runtime_error("model file models/" + spec.name() +
                                 ".json not found; run the train stage first");
      }
    }
    const auto test_set = featurize::load_feature_dataset(path("features/test.tsv"));
    const auto sessions = corpus::load_sessions(path("data/sessions.tsv"));
    const auto catalogue = corpus::load_catalogue(path("data/catalogue.tsv"));

    const auto groups = make_test_groups(test_set, cfg_.eval_targets);
    eval::EvalOptions options{cfg_.k, cfg_.bins, cfg_.gain_kind()};

    rank::BaselineScorer scorer(sessions, catalogue, cfg_.baseline_window_days);
    const rank::RankModel baseline = baseline_model(scorer);
    rank::save_model(baseline, path("eval/baseline.json"));

    std::map<std::string, rank::RankModel> models;
    for (const ModelSpec& spec : cfg_.model_roster()) {
      models[spec.name()] = rank::load_model(path("models/" + spec.name() + ".json"));
    }

    std::vector<eval::EvalReport> reports;
    for (const auto& [name, model] : models) {
      const std::string metric = raw_metric_of(model.target);
      for (const char* seg : {"all", "broad", "narrow"}) {
        reports.push_back(eval::evaluate_model(model, groups, metric, options, seg));
      }
    }
    for (const char* seg : {"all", "broad", "narrow"}) {
      reports.push_back(eval::evaluate_model(baseline, groups, "ctr", options, seg));
    }

    // cross-target over lambdamart YYYY models when all four are present
    eval::CrossTargetMatrix cross;
    {
      std::map<std::string, rank::RankModel> by_target;
      for (const std::string& t : cfg_.eval_targets) {
        const std::string name = "lambdamart_YYYY_log_" + t + "_all";
        auto it = models.find(name);
        if (it != models.end()) by_target[t] = it->second;
      }
      if (by_target.size() == cfg_.eval_targets.size()) {
        cross = eval::cross_target_matrix(by_target, groups, cfg_.eval_targets, options);
      }
    }

    std::vector<eval::AblationCell> ablation;
    {
      std::vector<const rank::RankModel*> cells;
      for (const auto& [name, model] : models) {
        if (model.target == "log_ctr" && model.segment == "all") cells.push_back(&model);
      }
      if (cells.size() > 1) ablation = eval::ablation_grid(cells, groups, "ctr", options);
    }

    eval::SegmentComparison segments;
    std::vector<eval::BaselineComparisonRow> baseline_rows;
    {
      auto combined = models.find("lambdamart_YYYY_log_ctr_all");
      auto broad = models.find("lambdamart_YYYY_log_ctr_broad");
      auto narrow = models.find("lambdamart_YYYY_log_ctr_narrow");
      if (combined != models.end() && broad != models.end() && narrow != models.end()) {
        segments = eval::segment_comparison(combined->second, broad->second, narrow->second,
                                            groups, "ctr", options);
        baseline_rows = eval::baseline_comparison(baseline, broad->second, narrow->second, groups,
                                                  "ctr", options);
      } else if (combined != models.end()) {
        baseline_rows = eval::baseline_comparison(baseline, combined->second, combined->second,
                                                  groups, "ctr", options);
      }
    }

    const nlohmann::json report =
        eval::report_to_json(reports, cross, ablation, segments, baseline_rows, options);
    std::ofstream out(path("eval/report.json"));
    out << report.dump(1) << '\n';
  }

  void do_report() {
    nlohmann::json report;
    {
      std::ifstream in(path("eval/report.json"));
      if (!in) throw std::runtime_error("eval/report.json not found; run the evaluate stage first");
      in >> report;
    }
    std::ofstream out(path("report/report.txt"));
    out << eval::render_report_text(report);
    eval::write_ablation_svg(report, path("report/figure5.svg"));
  }

  ExperimentConfig cfg_;
  fs::path out_;
  Manifest prev_, current_;
  std::ofstream log_;
};

}  // namespace

std::vector<StageStatus> run_pipeline(const ExperimentConfig& config, const std::string& out_dir,
                                      const std::vector<std::string>& only_stages) {
  Runner runner(config, out_dir);
  return runner.run(only_stages);
}

}  // namespace ltr::pipeline
