#pragma once

#include <map>
#include <string>
#include <vector>

#include "ltr/featurize/targets.hpp"
#include "ltr/types.hpp"

namespace ltr::featurize {

// Four-letter Y/N code over (query, query-product, popularity, physical)
// blocks; at least one flag must be set.
struct FeatureMask {
  bool query = true;
  bool query_product = true;
  bool popularity = true;
  bool physical = true;

  static FeatureMask from_code(const std::string& code);
  std::string code() const;
};

// Fixed per-dataset block widths and the column naming scheme.
struct FeatureSchema {
  int query_embedding_dim = 32;
  int phys_dim = 32;

  int query_dim() const { return query_embedding_dim + 6; }
  static constexpr int qp_dim() { return 7; }   // relevance + 2 entities x (rev, qty, ctr)
  static constexpr int pop_dim() { return 6; }  // 2 entities x (rev, qty, ctr)
  int total() const { return query_dim() + qp_dim() + pop_dim() + phys_dim; }

  int query_offset() const { return 0; }
  int qp_offset() const { return query_dim(); }
  int pop_offset() const { return query_dim() + qp_dim(); }
  int phys_offset() const { return query_dim() + qp_dim() + pop_dim(); }

  std::vector<std::string> column_names() const;
  std::vector<int> active_columns(const FeatureMask& mask) const;
};

struct FeatureBlocks {
  VecD query;
  VecD query_product;
  VecD popularity;
  VecD physical;
};

// Full-width vector with excluded blocks zeroed; tree models drop the
// same columns entirely via active_columns.
VecD assemble(const FeatureMask& mask, const FeatureBlocks& blocks, const FeatureSchema& schema);

// Inner product of the query and product embeddings; flagged (zero)
// vectors simply produce 0.
double relevance_score(VecRef query_vec, VecRef product_vec);

// Rows pooled over queries with their funnel counts; written to and read
// from the tab-separated feature-matrix format.
struct FeatureDataset {
  FeatureSchema schema;
  std::vector<std::string> queries;           // query id -> text
  std::vector<std::string> query_segments;    // query id -> broad|narrow
  std::vector<std::size_t> row_query;         // per-row query id
  std::vector<ProductId> row_product;
  RowMatD features;                           // full-width YYYY assembly
  std::vector<TargetRow> targets;

  std::size_t rows() const { return row_query.size(); }
};

void save_feature_dataset(const FeatureDataset& ds, const std::string& path);
FeatureDataset load_feature_dataset(const std::string& path);

}  // namespace ltr::featurize
