#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ltr/corpus/sessions.hpp"
#include "ltr/embed/embedding_table.hpp"
#include "ltr/types.hpp"

namespace ltr::segment {

// Known brands / article types / colors used for dictionary matching.
struct AttributeVocabulary {
  std::set<std::string> brands;
  std::set<std::string> article_types;
  std::set<std::string> colors;

  static AttributeVocabulary from_catalogue(const corpus::Catalogue& catalogue);
};

struct QueryFeatures {
  VecD embedding;
  std::size_t recall_set_size = 0;
  std::size_t char_length = 0;
  std::size_t word_count = 0;
  bool has_brand = false;
  bool has_article_type = false;
  bool has_color = false;
  std::optional<std::string> identified_brand;
  std::optional<std::string> identified_article_type;

  // numeric feature layout: embedding ++ [recall_size, char_length,
  // word_count, has_brand, has_article_type, has_color]
  VecD numeric() const;
  static std::size_t scalar_count() { return 6; }
};

// Dictionary match of query unigrams and bigrams against the vocabulary;
// for overlapping candidates the longest match wins.
QueryFeatures extract_query_features(const corpus::QueryRecord& record,
                                     const embed::EmbeddingTable& table,
                                     const AttributeVocabulary& vocab);

}  // namespace ltr::segment
