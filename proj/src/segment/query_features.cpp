#include "ltr/segment/query_features.hpp"

namespace ltr::segment {

AttributeVocabulary AttributeVocabulary::from_catalogue(const corpus::Catalogue& catalogue) {
  AttributeVocabulary v;
  for (const corpus::Product& p : catalogue.products()) {
    v.brands.insert(p.brand());
    v.article_types.insert(p.article_type());
    v.colors.insert(p.color());
  }
  return v;
}

VecD QueryFeatures::numeric() const {
  VecD out(embedding.size() + static_cast<Eigen::Index>(scalar_count()));
  out.head(embedding.size()) = embedding;
  auto tail = out.tail(static_cast<Eigen::Index>(scalar_count()));
  tail[0] = static_cast<double>(recall_set_size);
  tail[1] = static_cast<double>(char_length);
  tail[2] = static_cast<double>(word_count);
  tail[3] = has_brand ? 1.0 : 0.0;
  tail[4] = has_article_type ? 1.0 : 0.0;
  tail[5] = has_color ? 1.0 : 0.0;
  return out;
}

QueryFeatures extract_query_features(const corpus::QueryRecord& record,
                                     const embed::EmbeddingTable& table,
                                     const AttributeVocabulary& vocab) {
  QueryFeatures f;
  f.embedding = embed::query_vector(record.query, table).vector;
  f.recall_set_size = record.recall_set.size();
  f.char_length = record.query.size();

  const std::vector<std::string> words = embed::query_unigrams(record.query);
  f.word_count = words.size();

  // candidates: bigrams first so the longest match wins, then unigrams
  // over positions not already consumed by a bigram
  std::vector<bool> used(words.size(), false);
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    const std::string bigram = words[i] + " " + words[i + 1];
    if (vocab.brands.count(bigram)) {
      if (!f.identified_brand) f.identified_brand = bigram;
      f.has_brand = true;
      used[i] = used[i + 1] = true;
    } else if (vocab.article_types.count(bigram)) {
      if (!f.identified_article_type) f.identified_article_type = bigram;
      f.has_article_type = true;
      used[i] = used[i + 1] = true;
    }
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (used[i]) continue;
    const std::string& w = words[i];
    if (vocab.brands.count(w)) {
      if (!f.identified_brand) f.identified_brand = w;
      f.has_brand = true;
    }
    if (vocab.article_types.count(w)) {
      if (!f.identified_article_type) f.identified_article_type = w;
      f.has_article_type = true;
    }
    if (vocab.colors.count(w)) f.has_color = true;
  }
  return f;
}

}  // namespace ltr::segment
