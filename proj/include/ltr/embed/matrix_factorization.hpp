#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltr/corpus/sessions.hpp"
#include "ltr/embed/embedding_table.hpp"
#include "ltr/types.hpp"

namespace ltr::embed {

// Sparse user x product click-count matrix in coordinate form.
struct ClickMatrix {
  std::vector<std::string> users;     // row labels
  std::vector<ProductId> products;    // column labels
  struct Entry {
    std::size_t user = 0;
    std::size_t product = 0;
    double count = 0.0;
  };
  std::vector<Entry> entries;
};

// Queries act as the pseudo-users: every click on product p in a session
// of query q increments cell (q, p).
ClickMatrix click_matrix_from_logs(const std::vector<corpus::SessionLog>& logs);

struct MfConfig {
  int dim = 32;
  int epochs = 20;
  double learning_rate = 0.05;
  double regularization = 0.02;
};

struct MfResult {
  EmbeddingTable product_vectors;       // keyed by decimal product_id, unit norm
  std::vector<ProductId> zero_click;    // flagged products
  std::vector<double> epoch_loss;       // full-matrix squared error + L2 term
};

// SGD factorization of log1p click counts. Product vectors are
// L2-normalized after training so inner products (and the coherency
// score built on them) lie in [-1, 1].
MfResult mf_train(const ClickMatrix& matrix, const MfConfig& config, std::uint64_t seed);

// Catalogue products absent from the click matrix get a flagged zero
// vector; their ids are returned.
std::vector<ProductId> add_missing_products(EmbeddingTable& table,
                                            const corpus::Catalogue& catalogue);

}  // namespace ltr::embed
