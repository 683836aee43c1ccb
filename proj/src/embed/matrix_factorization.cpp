#include "ltr/embed/matrix_factorization.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ltr/rng.hpp"

namespace ltr::embed {

ClickMatrix click_matrix_from_logs(const std::vector<corpus::SessionLog>& logs) {
  // sessions stand in for users: logs carry no user id and a session is
  // one visitor's coherent intent, which is what the factorization needs
  std::map<std::pair<std::string, ProductId>, double> counts;
  for (const corpus::SessionLog& s : logs) {
    for (const corpus::ImpressionEvent& e : s.events) {
      if (e.clicked) counts[{std::to_string(s.session_id), e.product_id}] += 1.0;
    }
  }
  ClickMatrix m;
  std::map<std::string, std::size_t> user_idx;
  std::map<ProductId, std::size_t> product_idx;
  for (const auto& [key, count] : counts) {
    auto [uit, unew] = user_idx.emplace(key.first, m.users.size());
    if (unew) m.users.push_back(key.first);
    auto [pit, pnew] = product_idx.emplace(key.second, m.products.size());
    if (pnew) m.products.push_back(key.second);
    m.entries.push_back({uit->second, pit->second, count});
  }
  return m;
}

MfResult mf_train(const ClickMatrix& matrix, const MfConfig& config, std::uint64_t seed) {
  if (matrix.entries.empty()) throw std::invalid_argument("mf_train: empty click matrix");
  if (config.dim < 2) throw std::invalid_argument("mf_train: dim must be >= 2");

  const std::size_t nu = matrix.users.size();
  const std::size_t np = matrix.products.size();
  const int k = config.dim;

  auto rng = make_rng(seed);
  MatD user_f(nu, k), prod_f(np, k);
  const double init = 1.0 / std::sqrt(static_cast<double>(k));
  for (std::size_t i = 0; i < nu; ++i)
    for (int d = 0; d < k; ++d) user_f(i, d) = uniform(rng, -init, init);
  for (std::size_t i = 0; i < np; ++i)
    for (int d = 0; d < k; ++d) prod_f(i, d) = uniform(rng, -init, init);

  std::vector<double> target(matrix.entries.size());
  for (std::size_t i = 0; i < matrix.entries.size(); ++i) {
    target[i] = std::log1p(matrix.entries[i].count);
  }

  auto full_loss = [&] {
    double sse = 0.0;
    for (std::size_t i = 0; i < matrix.entries.size(); ++i) {
      const auto& e = matrix.entries[i];
      const double err = target[i] - user_f.row(e.user).dot(prod_f.row(e.product));
      sse += err * err;
    }
    return sse + config.regularization * (user_f.squaredNorm() + prod_f.squaredNorm());
  };

  MfResult result;
  std::vector<std::size_t> order(matrix.entries.size());
  std::iota(order.begin(), order.end(), 0);
  double lr = config.learning_rate;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    ltr::shuffle(order, rng);
    for (std::size_t oi : order) {
      const auto& e = matrix.entries[oi];
      const double pred = user_f.row(e.user).dot(prod_f.row(e.product));
      const double err = target[oi] - pred;
      const auto u = user_f.row(e.user).eval();
      user_f.row(e.user) += lr * (err * prod_f.row(e.product) - config.regularization * u);
      prod_f.row(e.product) += lr * (err * u - config.regularization * prod_f.row(e.product));
    }
    lr *= 0.95;
    result.epoch_loss.push_back(full_loss());
  }

  result.product_vectors = EmbeddingTable(k);
  for (std::size_t i = 0; i < np; ++i) {
    VecD v = prod_f.row(i).transpose();
    const double norm = v.norm();
    if (norm > 1e-12) v /= norm;
    result.product_vectors.insert(std::to_string(matrix.products[i]), std::move(v));
  }
  return result;
}

std::vector<ProductId> add_missing_products(EmbeddingTable& table,
                                            const corpus::Catalogue& catalogue) {
  std::vector<ProductId> missing;
  for (const corpus::Product& p : catalogue.products()) {
    const std::string key = std::to_string(p.product_id);
    if (!table.contains(key)) {
      table.insert(key, VecD::Zero(table.dimension()), /*flag=*/true);
      missing.push_back(p.product_id);
    }
  }
  return missing;
}

}  // namespace ltr::embed
