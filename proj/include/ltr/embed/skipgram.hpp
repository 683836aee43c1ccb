#pragma once

#include <cstdint>
#include <vector>

#include "ltr/embed/embedding_table.hpp"
#include "ltr/embed/session_documents.hpp"

namespace ltr::embed {

struct SkipgramConfig {
  int dim = 32;
  int window = 10;
  int negatives = 5;
  int epochs = 3;
  int min_count = 1;
  double learning_rate = 0.05;
  std::size_t max_documents = 0;  // 0 = use all; otherwise deterministic subsample
};

struct SkipgramResult {
  EmbeddingTable table;  // input vectors
  // average negative-sampling loss on a fixed held-out 1% pair sample,
  // measured after each epoch (index 0 = after epoch 1)
  std::vector<double> heldout_loss;
  std::vector<std::string> dropped_tokens;  // below min_count
};

// Skip-gram with negative sampling over session documents. Tokens within
// a document carry no order, so each document is reshuffled per epoch
// before windowing.
SkipgramResult skipgram_train(const std::vector<SessionDocument>& docs,
                              const SkipgramConfig& config, std::uint64_t seed);

}  // namespace ltr::embed
