#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ltr/rank/dataset.hpp"
#include "ltr/types.hpp"

namespace ltr::rank {

// Small tanh MLP scorer with a linear output unit.
struct Mlp {
  std::vector<MatD> weights;  // layer l: out x in
  std::vector<VecD> biases;

  static Mlp create(int input_dim, const std::vector<int>& hidden, std::uint64_t seed);

  double score(VecRef row) const;

  // flat parameter view for optimizer-agnostic checks
  std::size_t parameter_count() const;
  VecD flatten() const;
  void unflatten(VecRef params);
};

// (better row, worse row) within one group.
struct RankPair {
  std::size_t better = 0;
  std::size_t worse = 0;
};

struct RankNetConfig {
  std::vector<int> hidden = {64, 32};
  double learning_rate = 0.02;
  int epochs = 30;
  int max_pairs_per_group = 100;
};

struct RankNetResult {
  Mlp mlp;
  std::vector<double> epoch_loss;  // mean pairwise loss over the epoch's pairs
};

// Pairwise logistic loss log(1 + exp(-(s_better - s_worse))) over
// grade-ordered pairs; large groups are subsampled per epoch.
RankNetResult ranknet_train(const RankData& data, const std::vector<int>& active_features,
                            const RankNetConfig& config, std::uint64_t seed);

// Mean pairwise loss of the probe batch and its analytic gradient in the
// flattened parameter layout; the finite-difference check in the tests
// runs against this.
double pair_loss(const Mlp& mlp, const RowMatD& features, const std::vector<RankPair>& pairs);
VecD pair_loss_gradient(const Mlp& mlp, const RowMatD& features, const std::vector<RankPair>& pairs);

// Deterministic grade-ordered pair enumeration (or subsample) per group.
std::vector<RankPair> sample_pairs(const RankData& data, const RankData::Group& group,
                                   int max_pairs, std::mt19937_64& rng);

}  // namespace ltr::rank
