// Command-line front end for the ranking pipeline. Stages operate inside
// an experiment directory and skip themselves when inputs are unchanged.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "ltr/corpus/catalogue.hpp"
#include "ltr/corpus/synthetic.hpp"
#include "ltr/embed/embedding_table.hpp"
#include "ltr/pipeline/config.hpp"
#include "ltr/pipeline/stages.hpp"
#include "ltr/segment/coherency.hpp"
#include "ltr/segment/query_features.hpp"
#include "ltr/segment/svm.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "experiment";
  std::int64_t seed = -1;
};

ltr::pipeline::ExperimentConfig load_cfg(const CommonArgs& args) {
  ltr::pipeline::ExperimentConfig cfg;
  if (!args.config_path.empty()) cfg = ltr::pipeline::load_config(args.config_path);
  if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
  return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file (JSON)");
  cmd->add_option("--out", args.out_dir, "experiment directory");
  cmd->add_option("--seed", args.seed, "override the config's global seed");
}

int run_stages(const CommonArgs& args, const std::vector<std::string>& stages) {
  const auto cfg = load_cfg(args);
  const auto statuses = ltr::pipeline::run_pipeline(cfg, args.out_dir, stages);
  for (const auto& s : statuses) {
    std::printf("%-10s %s (%.0f ms)\n", s.name.c_str(), s.cached ? "cached" : "done",
                s.duration_ms);
  }
  return 0;
}

// standalone segment subcommands operating directly on files
struct SegmentFiles {
  std::string queries, catalogue, mf, w2v, model, output;
  double threshold = 0.58;
  bool grid = false;
};

std::vector<ltr::corpus::SyntheticQuery> read_queries(const std::string& path) {
  return ltr::corpus::load_queries(path);
}

int segment_score(const SegmentFiles& f) {
  const auto queries = read_queries(f.queries);
  const auto mf = ltr::embed::load_embedding(f.mf);
  std::ofstream out(f.output);
  if (!out) throw std::runtime_error("cannot write " + f.output);
  for (const auto& q : queries) {
    std::vector<ltr::VecD> vectors;
    for (ltr::ProductId pid : q.recall_set) {
      const std::string key = std::to_string(pid);
      if (mf.contains(key) && !mf.flagged(key)) vectors.push_back(mf.at(key));
    }
    const double score = vectors.empty() ? 0.0 : ltr::segment::coherency_score(vectors).score;
    out << q.text << '\t' << ltr::corpus::format_f6(score) << '\t'
        << ltr::segment::to_string(ltr::segment::threshold_label(score, f.threshold)) << '\n';
  }
  return 0;
}

int segment_train(const SegmentFiles& f, std::uint64_t seed) {
  ltr::pipeline::ExperimentConfig cfg;
  cfg.seed = seed;
  cfg.svm_grid_search = f.grid;
  const auto queries = read_queries(f.queries);
  const auto catalogue = ltr::corpus::load_catalogue(f.catalogue);
  ltr::pipeline::EmbeddingBundle bundle;
  bundle.mf = ltr::embed::load_embedding(f.mf);
  bundle.w2v = ltr::embed::load_embedding(f.w2v);
  const auto seg = ltr::pipeline::segment_queries(queries, bundle, catalogue, cfg);
  if (!seg.svm_used) throw std::runtime_error("not enough labelled queries to train the SVM");
  ltr::segment::save_svm(seg.svm, f.model);
  std::printf("svm holdout accuracy %.3f (threshold heuristic %.3f, n=%zu)\n",
              seg.svm_holdout_accuracy, seg.threshold_holdout_accuracy, seg.holdout_size);
  return 0;
}

int segment_predict(const SegmentFiles& f) {
  const auto queries = read_queries(f.queries);
  const auto catalogue = ltr::corpus::load_catalogue(f.catalogue);
  const auto w2v = ltr::embed::load_embedding(f.w2v);
  const auto model = ltr::segment::load_svm(f.model);
  const auto vocab = ltr::segment::AttributeVocabulary::from_catalogue(catalogue);
  std::ofstream out(f.output);
  if (!out) throw std::runtime_error("cannot write " + f.output);
  for (const auto& q : queries) {
    ltr::corpus::QueryRecord record{q.text, q.recall_set};
    const auto qf = ltr::segment::extract_query_features(record, w2v, vocab);
    out << q.text << '\t' << ltr::segment::to_string(model.predict(qf.numeric())) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"learning-to-rank pipeline for broad and narrow e-commerce queries"};
  app.require_subcommand(1);

  CommonArgs args;
  std::vector<std::string> pending;  // stages to run

  auto* run = app.add_subcommand("run", "run the full pipeline");
  add_common(run, args);
  run->callback([&] { pending = {}; });

  for (const std::string name :
       {"generate", "aggregate", "embed", "featurize", "evaluate", "report"}) {
    auto* cmd = app.add_subcommand(name, "run the " + name + " stage");
    add_common(cmd, args);
    cmd->callback([&, name] { pending = {name}; });
  }

  // train doubles as the rank-training interface
  auto* train = app.add_subcommand("train", "train ranking models");
  add_common(train, args);
  std::string train_model_kind, train_mask, train_target = "log_ctr", train_segment = "all";
  train->add_option("--model", train_model_kind, "rf|gbm|ranknet|lambdamart (default: config roster)");
  train->add_option("--mask", train_mask, "feature mask code, e.g. YYYY");
  train->add_option("--target", train_target, "training target, e.g. log_ctr");
  train->add_option("--segment", train_segment, "broad|narrow|all");

  // segment: stage by default, or score/train/predict on explicit files
  auto* seg = app.add_subcommand("segment", "segmentation stage and query-classifier tools");
  add_common(seg, args);
  SegmentFiles files;
  auto add_seg_files = [&](CLI::App* cmd, bool needs_model, bool needs_output) {
    cmd->add_option("--queries", files.queries, "queries file")->required();
    cmd->add_option("--catalogue", files.catalogue, "catalogue file");
    cmd->add_option("--mf", files.mf, "matrix-factorization embedding file");
    cmd->add_option("--w2v", files.w2v, "skip-gram embedding file");
    if (needs_model) cmd->add_option("--model", files.model, "svm model file")->required();
    if (needs_output) cmd->add_option("--output", files.output, "output file")->required();
  };
  auto* seg_score = seg->add_subcommand("score", "coherency scores and threshold labels");
  add_seg_files(seg_score, false, true);
  seg_score->add_option("--threshold", files.threshold, "broad/narrow threshold");
  auto* seg_train = seg->add_subcommand("train", "train the RBF-SVM query classifier");
  add_seg_files(seg_train, true, false);
  seg_train->add_flag("--grid", files.grid, "3-fold cross-validated C/gamma grid search");
  auto* seg_predict = seg->add_subcommand("predict", "classify queries with a trained SVM");
  add_seg_files(seg_predict, true, true);

  try {
    app.parse(argc, argv);

    if (seg->parsed()) {
      if (seg_score->parsed()) return segment_score(files);
      if (seg_train->parsed()) {
        return segment_train(files, args.seed >= 0 ? static_cast<std::uint64_t>(args.seed) : 42);
      }
      if (seg_predict->parsed()) return segment_predict(files);
      return run_stages(args, {"segment"});
    }
    if (train->parsed()) {
      auto cfg = load_cfg(args);
      if (!train_model_kind.empty()) {
        ltr::pipeline::ModelSpec spec;
        spec.kind = train_model_kind;
        spec.mask = train_mask.empty() ? "YYYY" : train_mask;
        spec.target = train_target;
        spec.segment = train_segment;
        cfg.models = {spec};
      }
      const auto statuses = ltr::pipeline::run_pipeline(cfg, args.out_dir, {"train"});
      for (const auto& s : statuses) {
        std::printf("%-10s %s (%.0f ms)\n", s.name.c_str(), s.cached ? "cached" : "done",
                    s.duration_ms);
      }
      return 0;
    }
    return run_stages(args, pending);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ltr::pipeline::StageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
