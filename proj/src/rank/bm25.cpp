#include "ltr/rank/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltr/embed/embedding_table.hpp"

namespace ltr::rank {

namespace {

double idf(const CorpusStats& stats, const std::string& term) {
  auto it = stats.doc_frequency.find(term);
  const double df = it == stats.doc_frequency.end() ? 0.0 : static_cast<double>(it->second);
  if (df <= 0.0) return 0.0;
  const double n = static_cast<double>(stats.doc_count);
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

double term_score(double tf, double dl, const CorpusStats& stats, const Bm25Params& p) {
  const double norm = p.k1 * (1.0 - p.b + p.b * dl / std::max(stats.avg_doc_length, 1e-12));
  return tf * (p.k1 + 1.0) / (tf + norm);
}

}  // namespace

double bm25(const std::vector<std::string>& query_tokens,
            const std::vector<std::string>& doc_tokens, const CorpusStats& stats,
            const Bm25Params& params) {
  std::map<std::string, double> tf;
  for (const std::string& t : doc_tokens) tf[t] += 1.0;
  const double dl = static_cast<double>(doc_tokens.size());
  double score = 0.0;
  for (const std::string& q : query_tokens) {
    auto it = tf.find(q);
    if (it == tf.end()) continue;
    score += idf(stats, q) * term_score(it->second, dl, stats, params);
  }
  return score;
}

double recall_score(double bm25_norm, double baseline, double alpha) {
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("recall_score: alpha outside [0,1]");
  return alpha * bm25_norm + (1.0 - alpha) * baseline;
}

std::vector<std::string> product_document(const corpus::Product& product) {
  std::vector<std::string> tokens;
  for (const auto& [key, value] : product.attributes) {
    std::string w;
    for (char c : value) {
      if (c == ' ') {
        if (!w.empty()) tokens.push_back(std::move(w));
        w.clear();
      } else {
        w += c;
      }
    }
    if (!w.empty()) tokens.push_back(std::move(w));
  }
  return tokens;
}

Bm25Index::Bm25Index(const corpus::Catalogue& catalogue, const Bm25Params& params)
    : params_(params) {
  double total_len = 0.0;
  for (const corpus::Product& p : catalogue.products()) {
    const std::size_t doc = ids_.size();
    ids_.push_back(p.product_id);
    id_index_[p.product_id] = doc;
    std::map<std::string, int> tf;
    const auto tokens = product_document(p);
    for (const std::string& t : tokens) tf[t]++;
    doc_length_.push_back(static_cast<double>(tokens.size()));
    total_len += static_cast<double>(tokens.size());
    for (const auto& [t, f] : tf) {
      postings_[t].push_back({doc, f});
      stats_.doc_frequency[t]++;
    }
  }
  stats_.doc_count = ids_.size();
  stats_.avg_doc_length = stats_.doc_count ? total_len / static_cast<double>(stats_.doc_count) : 0.0;
}

double Bm25Index::score(const std::vector<std::string>& query_tokens, ProductId id) const {
  auto it = id_index_.find(id);
  if (it == id_index_.end()) return 0.0;
  const std::size_t doc = it->second;
  double s = 0.0;
  for (const std::string& q : query_tokens) {
    auto pit = postings_.find(q);
    if (pit == postings_.end()) continue;
    const auto& list = pit->second;
    auto hit = std::lower_bound(list.begin(), list.end(), doc,
                                [](const auto& a, std::size_t d) { return a.first < d; });
    if (hit == list.end() || hit->first != doc) continue;
    s += idf(stats_, q) * term_score(hit->second, doc_length_[doc], stats_, params_);
  }
  return s;
}

std::vector<std::pair<ProductId, double>> Bm25Index::top_k(const std::string& query,
                                                           std::size_t k) const {
  std::map<std::size_t, double> acc;
  for (const std::string& q : embed::query_unigrams(query)) {
    auto pit = postings_.find(q);
    if (pit == postings_.end()) continue;
    const double w = idf(stats_, q);
    for (const auto& [doc, tf] : pit->second) {
      acc[doc] += w * term_score(tf, doc_length_[doc], stats_, params_);
    }
  }
  std::vector<std::pair<ProductId, double>> out;
  out.reserve(acc.size());
  for (const auto& [doc, s] : acc) out.push_back({ids_[doc], s});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace ltr::rank
