#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ltr/corpus/synthetic.hpp"
#include "ltr/embed/session_documents.hpp"
#include "ltr/eval/experiments.hpp"
#include "ltr/featurize/features.hpp"
#include "ltr/pipeline/config.hpp"
#include "ltr/pipeline/manifest.hpp"
#include "ltr/rank/baseline.hpp"
#include "ltr/segment/query_features.hpp"

namespace ltr::pipeline {

// ---- in-memory builders; the file stages and the test harness share these

struct EmbeddingBundle {
  embed::EmbeddingTable mf;   // product ids -> unit vectors, zero-click flagged
  embed::EmbeddingTable w2v;  // token space
};

EmbeddingBundle build_embeddings(const std::vector<corpus::SessionLog>& sessions,
                                 const corpus::Catalogue& catalogue,
                                 const embed::SynonymMap& synonyms,
                                 const ExperimentConfig& config);

struct SegmentationResult {
  std::vector<double> scores;  // one per query, queries order
  std::vector<segment::SegmentLabel> threshold_labels;
  std::vector<std::optional<segment::SegmentLabel>> heuristic_labels;
  std::vector<segment::SegmentLabel> predicted;  // classifier output (or threshold fallback)
  bool svm_used = false;
  segment::SvmModel svm;
  double svm_holdout_accuracy = 0.0;     // vs truth on the held-out split
  double threshold_holdout_accuracy = 0.0;
  std::size_t holdout_size = 0;
};

SegmentationResult segment_queries(const std::vector<corpus::SyntheticQuery>& queries,
                                   const EmbeddingBundle& embeddings,
                                   const corpus::Catalogue& catalogue,
                                   const ExperimentConfig& config);

struct FeatureBundle {
  featurize::FeatureDataset train_set;
  featurize::FeatureDataset test_set;
  std::vector<featurize::Autoencoder> autoencoders;  // one per master category
  rank::BaselineScorer baseline;
};

FeatureBundle build_features(const std::vector<corpus::SyntheticQuery>& queries,
                             const std::vector<segment::SegmentLabel>& segments,
                             const std::vector<corpus::SessionLog>& sessions,
                             const corpus::Catalogue& catalogue,
                             const corpus::AggregateMap& aggregates,
                             const EmbeddingBundle& embeddings, const ExperimentConfig& config);

// Rows of one training slice, grouped by query with grades binned from
// the target's raw metric. ATCR slices drop rows with no clicks.
rank::RankData make_rank_data(const featurize::FeatureDataset& dataset, const std::string& target,
                              const std::string& segment, int bins);

std::vector<eval::TestGroup> make_test_groups(const featurize::FeatureDataset& dataset,
                                              const std::vector<std::string>& metrics);

rank::RankModel train_model(const ModelSpec& spec, const featurize::FeatureDataset& train_set,
                            const ExperimentConfig& config);

rank::RankModel baseline_model(const rank::BaselineScorer& scorer);

// ---- file-based pipeline --------------------------------------------------

struct StageStatus {
  std::string name;
  bool cached = false;
  double duration_ms = 0.0;
};

extern const std::vector<std::string> kStageOrder;  // generate..report

// Runs the requested stages (all when empty) in dependency order inside
// out_dir, reusing cached outputs whose config and input hashes match.
// Throws StageError naming the failed stage; partial artifacts remain.
struct StageError : std::runtime_error {
  std::string stage;
  StageError(std::string stage_name, const std::string& what)
      : std::runtime_error("stage '" + stage_name + "' failed: " + what),
        stage(std::move(stage_name)) {}
};

std::vector<StageStatus> run_pipeline(const ExperimentConfig& config, const std::string& out_dir,
                                      const std::vector<std::string>& only_stages = {});

}  // namespace ltr::pipeline
