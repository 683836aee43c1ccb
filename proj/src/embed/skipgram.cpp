#include "ltr/embed/skipgram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ltr/rng.hpp"

namespace ltr::embed {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct HeldOutPair {
  std::size_t center = 0;
  std::size_t context = 0;
  std::vector<std::size_t> negatives;
};

}  // namespace

SkipgramResult skipgram_train(const std::vector<SessionDocument>& docs,
                              const SkipgramConfig& config, std::uint64_t seed) {
  if (docs.empty()) throw std::invalid_argument("skipgram_train: no documents");

  auto rng = make_rng(seed);

  std::vector<std::size_t> doc_ids(docs.size());
  std::iota(doc_ids.begin(), doc_ids.end(), 0);
  if (config.max_documents > 0 && docs.size() > config.max_documents) {
    ltr::shuffle(doc_ids, rng);
    doc_ids.resize(config.max_documents);
    std::sort(doc_ids.begin(), doc_ids.end());
  }

  // vocabulary: min-count filter, indexed by (count desc, token asc)
  std::map<std::string, std::int64_t> counts;
  for (std::size_t di : doc_ids) {
    for (const std::string& t : docs[di].tokens) counts[t]++;
  }
  SkipgramResult result;
  std::vector<std::pair<std::int64_t, std::string>> keep;
  for (const auto& [t, c] : counts) {
    if (c >= config.min_count) {
      keep.push_back({c, t});
    } else {
      result.dropped_tokens.push_back(t);
    }
  }
  std::sort(keep.begin(), keep.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  if (keep.size() < 2) throw std::invalid_argument("skipgram_train: vocabulary below 2 tokens");

  const std::size_t vocab = keep.size();
  std::map<std::string, std::size_t> token_idx;
  for (std::size_t i = 0; i < vocab; ++i) token_idx[keep[i].second] = i;

  // unigram^0.75 negative-sampling distribution
  std::vector<double> neg_cdf(vocab);
  {
    double acc = 0.0;
    for (std::size_t i = 0; i < vocab; ++i) {
      acc += std::pow(static_cast<double>(keep[i].first), 0.75);
      neg_cdf[i] = acc;
    }
  }
  auto sample_negative = [&](std::mt19937_64& r) {
    const double u = uniform01(r) * neg_cdf.back();
    return static_cast<std::size_t>(std::lower_bound(neg_cdf.begin(), neg_cdf.end(), u) -
                                    neg_cdf.begin());
  };

  // documents as index sequences; 1% of them held out for loss tracking
  std::vector<std::vector<std::size_t>> corpus;
  corpus.reserve(doc_ids.size());
  for (std::size_t di : doc_ids) {
    std::vector<std::size_t> seq;
    for (const std::string& t : docs[di].tokens) {
      if (auto it = token_idx.find(t); it != token_idx.end()) seq.push_back(it->second);
    }
    if (seq.size() >= 2) corpus.push_back(std::move(seq));
  }
  if (corpus.empty()) throw std::invalid_argument("skipgram_train: no usable documents");

  std::size_t n_held = corpus.size() / 100;
  if (n_held == 0 && corpus.size() >= 2) n_held = 1;
  std::vector<HeldOutPair> held;
  {
    std::vector<std::size_t> ids(corpus.size());
    std::iota(ids.begin(), ids.end(), 0);
    ltr::shuffle(ids, rng);
    std::vector<std::size_t> held_ids(ids.begin(), ids.begin() + n_held);
    std::sort(held_ids.begin(), held_ids.end(), std::greater<>());
    for (std::size_t hi : held_ids) {
      const auto& seq = corpus[hi];
      for (std::size_t i = 0; i < seq.size(); ++i) {
        for (std::size_t j = i + 1; j < std::min(seq.size(), i + 1 + 3); ++j) {
          HeldOutPair hp;
          hp.center = seq[i];
          hp.context = seq[j];
          for (int n = 0; n < config.negatives; ++n) hp.negatives.push_back(sample_negative(rng));
          held.push_back(std::move(hp));
        }
      }
      corpus.erase(corpus.begin() + static_cast<std::ptrdiff_t>(hi));
    }
    if (corpus.empty()) throw std::invalid_argument("skipgram_train: all documents held out");
  }

  const int dim = config.dim;
  MatD in_vec(vocab, dim), out_vec = MatD::Zero(vocab, dim);
  const double init = 0.5 / dim;
  for (std::size_t i = 0; i < vocab; ++i)
    for (int d = 0; d < dim; ++d) in_vec(i, d) = uniform(rng, -init, init);

  auto heldout_loss = [&] {
    if (held.empty()) return 0.0;
    double loss = 0.0;
    for (const HeldOutPair& hp : held) {
      const double pos = sigmoid(in_vec.row(hp.center).dot(out_vec.row(hp.context)));
      loss -= std::log(std::max(pos, 1e-12));
      for (std::size_t n : hp.negatives) {
        const double neg = sigmoid(-in_vec.row(hp.center).dot(out_vec.row(n)));
        loss -= std::log(std::max(neg, 1e-12));
      }
    }
    return loss / static_cast<double>(held.size());
  };

  // total update count for the linear learning-rate decay
  std::size_t tokens_per_epoch = 0;
  for (const auto& seq : corpus) tokens_per_epoch += seq.size();
  const double total_steps =
      std::max<double>(1.0, static_cast<double>(tokens_per_epoch) * config.epochs);
  std::size_t step = 0;

  std::vector<std::size_t> doc_order(corpus.size());
  std::iota(doc_order.begin(), doc_order.end(), 0);
  Eigen::RowVectorXd grad_center(dim);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    ltr::shuffle(doc_order, rng);
    for (std::size_t oi : doc_order) {
      auto& seq = corpus[oi];
      ltr::shuffle(seq, rng);  // attribute tokens are unordered within a session
      for (std::size_t i = 0; i < seq.size(); ++i, ++step) {
        const double lr =
            config.learning_rate * std::max(0.05, 1.0 - static_cast<double>(step) / total_steps);
        const std::size_t center = seq[i];
        // dynamic window in [1, window], word2vec style
        const std::size_t w = 1 + rng() % static_cast<std::size_t>(config.window);
        const std::size_t lo = i >= w ? i - w : 0;
        const std::size_t hi = std::min(seq.size() - 1, i + w);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          const std::size_t context = seq[j];
          grad_center.setZero();
          {
            const double score = sigmoid(in_vec.row(center).dot(out_vec.row(context)));
            const double g = lr * (1.0 - score);
            grad_center += g * out_vec.row(context);
            out_vec.row(context) += g * in_vec.row(center);
          }
          for (int n = 0; n < config.negatives; ++n) {
            const std::size_t neg = sample_negative(rng);
            if (neg == context) continue;
            const double score = sigmoid(in_vec.row(center).dot(out_vec.row(neg)));
            const double g = lr * (0.0 - score);
            grad_center += g * out_vec.row(neg);
            out_vec.row(neg) += g * in_vec.row(center);
          }
          in_vec.row(center) += grad_center;
        }
      }
    }
    result.heldout_loss.push_back(heldout_loss());
  }

  result.table = EmbeddingTable(dim);
  for (std::size_t i = 0; i < vocab; ++i) {
    result.table.insert(keep[i].second, in_vec.row(i).transpose());
  }
  std::sort(result.dropped_tokens.begin(), result.dropped_tokens.end());
  return result;
}

}  // namespace ltr::embed
