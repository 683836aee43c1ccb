#include "ltr/embed/embedding_table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ltr::embed {

void EmbeddingTable::insert(const std::string& token, VecD vector, bool flag) {
  if (vector.size() != dim_) {
    throw std::invalid_argument("embedding dimension mismatch for token '" + token + "'");
  }
  auto [it, inserted] = index_.emplace(token, vectors_.size());
  if (inserted) {
    vectors_.push_back(std::move(vector));
  } else {
    vectors_[it->second] = std::move(vector);
  }
  if (flag) flagged_.insert(token);
}

const VecD& EmbeddingTable::at(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) throw std::out_of_range("token not in embedding table: " + token);
  return vectors_[it->second];
}

const VecD* EmbeddingTable::find(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? nullptr : &vectors_[it->second];
}

void EmbeddingTable::check() const {
  for (const auto& [token, i] : index_) {
    const VecD& v = vectors_[i];
    if (v.size() != dim_) throw std::runtime_error("dimension mismatch at token " + token);
    if (!v.allFinite()) throw std::runtime_error("non-finite component at token " + token);
  }
}

void save_embedding(const EmbeddingTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw corpus::ParseError("cannot write embedding file: " + path);
  out << "dim=" << table.dimension() << " count=" << table.size() << '\n';
  char buf[40];
  for (const auto& [token, i] : table.index()) {
    out << token;
    const VecD& v = table.vectors()[i];
    for (int d = 0; d < v.size(); ++d) {
      std::snprintf(buf, sizeof(buf), "%.9g", v[d]);
      out << (d == 0 ? '\t' : ' ') << buf;
    }
    out << '\n';
  }
}

EmbeddingTable load_embedding(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw corpus::ParseError("cannot open embedding file: " + path);
  std::string header;
  std::getline(in, header);
  int dim = 0;
  std::size_t count = 0;
  if (std::sscanf(header.c_str(), "dim=%d count=%zu", &dim, &count) != 2 || dim <= 0) {
    throw corpus::ParseError(path + ": bad embedding header '" + header + "'");
  }
  EmbeddingTable table(dim);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw corpus::ParseError(path + ": missing tab separator");
    VecD v(dim);
    std::istringstream values(line.substr(tab + 1));
    for (int d = 0; d < dim; ++d) {
      if (!(values >> v[d])) throw corpus::ParseError(path + ": short vector for " + line.substr(0, tab));
    }
    const bool flag = v.isZero(0.0);
    table.insert(line.substr(0, tab), std::move(v), flag);
  }
  if (table.size() != count) throw corpus::ParseError(path + ": count mismatch");
  return table;
}

std::vector<std::string> query_unigrams(const std::string& query) {
  std::vector<std::string> words;
  std::string w;
  for (char c : query) {
    if (c == ' ' || c == '\t') {
      if (!w.empty()) words.push_back(std::move(w));
      w.clear();
    } else {
      w += c;
    }
  }
  if (!w.empty()) words.push_back(std::move(w));
  return words;
}

std::string attribute_token(const std::string& key, const std::string& value) {
  return key + "=" + value;
}

namespace {

VectorResult centroid_of(const std::vector<const VecD*>& vs, int dim) {
  VectorResult r;
  r.vector = VecD::Zero(dim);
  if (vs.empty()) {
    r.flagged = true;
    return r;
  }
  for (const VecD* v : vs) r.vector += *v;
  r.vector /= static_cast<double>(vs.size());
  return r;
}

}  // namespace

VectorResult product_vector(const corpus::Product& product, const EmbeddingTable& table) {
  std::vector<const VecD*> vs;
  for (const auto& [k, v] : product.attributes) {
    const std::string token = attribute_token(k, v);
    if (const VecD* vec = table.find(token); vec && !table.flagged(token)) vs.push_back(vec);
  }
  return centroid_of(vs, table.dimension());
}

VectorResult query_vector(const std::string& query, const EmbeddingTable& table) {
  std::vector<const VecD*> vs;
  for (const std::string& w : query_unigrams(query)) {
    if (const VecD* vec = table.find(w); vec && !table.flagged(w)) vs.push_back(vec);
  }
  return centroid_of(vs, table.dimension());
}

double cosine(const VecD& a, const VecD& b) {
  const double na = a.norm(), nb = b.norm();
  if (na < 1e-300 || nb < 1e-300) return 0.0;
  return a.dot(b) / (na * nb);
}

}  // namespace ltr::embed
