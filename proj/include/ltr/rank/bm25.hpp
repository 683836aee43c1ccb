#pragma once

#include <map>
#include <string>
#include <vector>

#include "ltr/corpus/catalogue.hpp"
#include "ltr/types.hpp"

namespace ltr::rank {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct CorpusStats {
  std::size_t doc_count = 0;
  double avg_doc_length = 0.0;
  std::map<std::string, std::size_t> doc_frequency;
};

// Okapi BM25 with the non-negative idf variant ln(1 + (N-df+0.5)/(df+0.5)).
double bm25(const std::vector<std::string>& query_tokens,
            const std::vector<std::string>& doc_tokens, const CorpusStats& stats,
            const Bm25Params& params = {});

// Blend of a per-query-normalized BM25 score with the popularity
// baseline; alpha = 1 is pure BM25.
double recall_score(double bm25_norm, double baseline, double alpha);

// Bag of whitespace-split attribute values (two-word brands contribute
// both words).
std::vector<std::string> product_document(const corpus::Product& product);

// Inverted index over product documents for top-K retrieval.
class Bm25Index {
 public:
  Bm25Index(const corpus::Catalogue& catalogue, const Bm25Params& params = {});

  const CorpusStats& stats() const { return stats_; }
  double score(const std::vector<std::string>& query_tokens, ProductId id) const;
  // (product_id, score) sorted by score desc, id asc; only docs matching
  // at least one query term
  std::vector<std::pair<ProductId, double>> top_k(const std::string& query, std::size_t k) const;

 private:
  Bm25Params params_;
  CorpusStats stats_;
  std::vector<ProductId> ids_;
  std::map<ProductId, std::size_t> id_index_;
  std::vector<double> doc_length_;
  std::map<std::string, std::vector<std::pair<std::size_t, int>>> postings_;  // term -> (doc, tf)
};

}  // namespace ltr::rank
