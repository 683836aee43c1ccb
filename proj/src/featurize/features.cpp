#include "ltr/featurize/features.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "ltr/corpus/catalogue.hpp"

namespace ltr::featurize {

FeatureMask FeatureMask::from_code(const std::string& code) {
  if (code.size() != 4) throw std::invalid_argument("feature mask code must have 4 letters");
  FeatureMask m;
  auto flag = [&](char c) {
    if (c != 'Y' && c != 'N') throw std::invalid_argument("feature mask code must be Y/N letters");
    return c == 'Y';
  };
  m.query = flag(code[0]);
  m.query_product = flag(code[1]);
  m.popularity = flag(code[2]);
  m.physical = flag(code[3]);
  if (!m.query && !m.query_product && !m.popularity && !m.physical) {
    throw std::invalid_argument("feature mask must keep at least one block");
  }
  return m;
}

std::string FeatureMask::code() const {
  std::string s;
  s += query ? 'Y' : 'N';
  s += query_product ? 'Y' : 'N';
  s += popularity ? 'Y' : 'N';
  s += physical ? 'Y' : 'N';
  return s;
}

std::vector<std::string> FeatureSchema::column_names() const {
  std::vector<std::string> names;
  for (int i = 0; i < query_embedding_dim; ++i) names.push_back("q:emb" + std::to_string(i));
  for (const char* s : {"q:recall_size", "q:char_len", "q:word_count", "q:has_brand",
                        "q:has_article_type", "q:has_color"}) {
    names.push_back(s);
  }
  for (const char* s : {"qp:relevance", "qp:brand_rev", "qp:brand_qty", "qp:brand_ctr",
                        "qp:at_rev", "qp:at_qty", "qp:at_ctr"}) {
    names.push_back(s);
  }
  for (const char* s :
       {"pop:brand_rev", "pop:brand_qty", "pop:brand_ctr", "pop:at_rev", "pop:at_qty", "pop:at_ctr"}) {
    names.push_back(s);
  }
  for (int i = 0; i < phys_dim; ++i) names.push_back("phys:code" + std::to_string(i));
  return names;
}

std::vector<int> FeatureSchema::active_columns(const FeatureMask& mask) const {
  std::vector<int> cols;
  auto add = [&](int off, int n) {
    for (int i = 0; i < n; ++i) cols.push_back(off + i);
  };
  if (mask.query) add(query_offset(), query_dim());
  if (mask.query_product) add(qp_offset(), qp_dim());
  if (mask.popularity) add(pop_offset(), pop_dim());
  if (mask.physical) add(phys_offset(), phys_dim);
  return cols;
}

VecD assemble(const FeatureMask& mask, const FeatureBlocks& blocks, const FeatureSchema& schema) {
  if (blocks.query.size() != schema.query_dim() || blocks.query_product.size() != schema.qp_dim() ||
      blocks.popularity.size() != schema.pop_dim() || blocks.physical.size() != schema.phys_dim) {
    throw std::invalid_argument("assemble: block sizes do not match the schema");
  }
  VecD v = VecD::Zero(schema.total());
  if (mask.query) v.segment(schema.query_offset(), schema.query_dim()) = blocks.query;
  if (mask.query_product) v.segment(schema.qp_offset(), schema.qp_dim()) = blocks.query_product;
  if (mask.popularity) v.segment(schema.pop_offset(), schema.pop_dim()) = blocks.popularity;
  if (mask.physical) v.segment(schema.phys_offset(), schema.phys_dim) = blocks.physical;
  return v;
}

double relevance_score(VecRef query_vec, VecRef product_vec) {
  if (query_vec.size() != product_vec.size()) {
    throw std::invalid_argument("relevance_score: dimension mismatch");
  }
  return query_vec.dot(product_vec);
}

void save_feature_dataset(const FeatureDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write feature file: " + path);
  for (std::size_t q = 0; q < ds.queries.size(); ++q) {
    out << "#q\t" << q << '\t' << ds.query_segments[q] << '\t' << ds.queries[q] << '\n';
  }
  out << "#h\tquery_id\tproduct_id";
  for (const std::string& c : ds.schema.column_names()) out << '\t' << c;
  out << "\tI\tC\tB\tQ\tR\n";
  char buf[40];
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    out << ds.row_query[r] << '\t' << ds.row_product[r];
    for (Eigen::Index c = 0; c < ds.features.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.9g", ds.features(static_cast<Eigen::Index>(r), c));
      out << '\t' << buf;
    }
    const TargetRow& t = ds.targets[r];
    out << '\t' << t.impressions << '\t' << t.clicks << '\t' << t.carts << '\t' << t.purchases
        << '\t' << corpus::format_f6(t.revenue) << '\n';
  }
}

FeatureDataset load_feature_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open feature file: " + path);
  FeatureDataset ds;
  std::string line;
  std::vector<std::vector<double>> rows;
  int n_cols = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("#q\t", 0) == 0) {
      // #q <id> <segment> <query>
      const auto t1 = line.find('\t');
      const auto t2 = line.find('\t', t1 + 1);
      const auto t3 = line.find('\t', t2 + 1);
      if (t3 == std::string::npos) throw corpus::ParseError(path + ": bad #q line");
      ds.query_segments.push_back(line.substr(t2 + 1, t3 - t2 - 1));
      ds.queries.push_back(line.substr(t3 + 1));
      continue;
    }
    if (line.rfind("#h\t", 0) == 0) {
      int tabs = 0;
      for (char c : line) tabs += c == '\t' ? 1 : 0;
      n_cols = tabs - 2 - 5;  // minus query_id/product_id and I C B Q R
      continue;
    }
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        f.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (n_cols < 0 || f.size() != static_cast<std::size_t>(n_cols) + 7) {
      throw corpus::ParseError(path + ": malformed feature row");
    }
    ds.row_query.push_back(std::stoull(f[0]));
    ds.row_product.push_back(std::stoll(f[1]));
    std::vector<double> vals(n_cols);
    for (int c = 0; c < n_cols; ++c) vals[c] = std::stod(f[2 + c]);
    rows.push_back(std::move(vals));
    corpus::QueryProductAggregate agg;
    agg.impressions = std::stoll(f[2 + n_cols]);
    agg.clicks = std::stoll(f[3 + n_cols]);
    agg.carts = std::stoll(f[4 + n_cols]);
    agg.purchases = std::stoll(f[5 + n_cols]);
    agg.revenue = std::stod(f[6 + n_cols]);
    // zero-impression rows (unlogged test candidates) keep a blank row
    ds.targets.push_back(agg.impressions > 0 ? compute_targets(agg) : TargetRow{});
  }
  ds.features.resize(static_cast<Eigen::Index>(rows.size()), n_cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int c = 0; c < n_cols; ++c) ds.features(static_cast<Eigen::Index>(r), c) = rows[r][c];
  }
  // recover schema dims: phys is 32 by construction, the rest derives
  ds.schema.phys_dim = 32;
  ds.schema.query_embedding_dim = n_cols - 6 - FeatureSchema::qp_dim() - FeatureSchema::pop_dim() - 32;
  if (ds.schema.total() != n_cols) throw corpus::ParseError(path + ": inconsistent column count");
  return ds;
}

}  // namespace ltr::featurize
