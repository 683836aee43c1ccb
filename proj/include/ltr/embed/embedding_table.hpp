#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ltr/corpus/catalogue.hpp"
#include "ltr/types.hpp"

namespace ltr::embed {

// token -> dense vector map with a fixed dimensionality. Tokens may be
// attribute "key=value" strings, query unigrams, synonyms or product ids
// rendered in decimal. Flagged tokens hold a zero vector standing in for
// "no data" (e.g. a product that was never clicked).
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(int dimension) : dim_(dimension) {}

  int dimension() const { return dim_; }
  std::size_t size() const { return index_.size(); }
  bool contains(const std::string& token) const { return index_.count(token) > 0; }
  bool flagged(const std::string& token) const { return flagged_.count(token) > 0; }

  void insert(const std::string& token, VecD vector, bool flag = false);
  const VecD& at(const std::string& token) const;
  const VecD* find(const std::string& token) const;
  const std::map<std::string, std::size_t>& index() const { return index_; }
  const std::vector<VecD>& vectors() const { return vectors_; }

  void check() const;  // all vectors share dim_, finite components

 private:
  int dim_ = 0;
  std::map<std::string, std::size_t> index_;
  std::vector<VecD> vectors_;
  std::set<std::string> flagged_;
};

// header `dim=<d> count=<n>`, then one `token \t v1 v2 ... vd` per line
void save_embedding(const EmbeddingTable& table, const std::string& path);
EmbeddingTable load_embedding(const std::string& path);

struct VectorResult {
  VecD vector;
  bool flagged = false;  // no in-vocabulary token contributed
};

// Centroid of the product's in-vocabulary attribute vectors.
VectorResult product_vector(const corpus::Product& product, const EmbeddingTable& table);

// Centroid of the query's in-vocabulary unigram vectors.
VectorResult query_vector(const std::string& query, const EmbeddingTable& table);

std::vector<std::string> query_unigrams(const std::string& query);
std::string attribute_token(const std::string& key, const std::string& value);

double cosine(const VecD& a, const VecD& b);

}  // namespace ltr::embed
