#include "ltr/corpus/catalogue.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ltr::corpus {

namespace {

const char* kMandatoryKeys[] = {"brand", "article_type", "color"};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& what) {
  throw ParseError(name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::string format_f6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

const std::string& Product::attr(const std::string& key) const {
  auto it = attributes.find(key);
  if (it == attributes.end()) {
    throw std::out_of_range("product " + std::to_string(product_id) + " lacks attribute '" + key +
                            "'");
  }
  return it->second;
}

Catalogue::Catalogue(std::vector<Product> products) : products_(std::move(products)) {
  std::sort(products_.begin(), products_.end(),
            [](const Product& a, const Product& b) { return a.product_id < b.product_id; });
  for (std::size_t i = 0; i < products_.size(); ++i) {
    auto [it, inserted] = index_.emplace(products_[i].product_id, i);
    if (!inserted) {
      throw ParseError("duplicate product_id " + std::to_string(products_[i].product_id));
    }
  }
}

const Product& Catalogue::by_id(ProductId id) const {
  const Product* p = find(id);
  if (!p) throw std::out_of_range("unknown product_id " + std::to_string(id));
  return *p;
}

const Product* Catalogue::find(ProductId id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &products_[it->second];
}

std::map<std::string, std::vector<std::string>> Catalogue::attribute_vocabulary() const {
  std::map<std::string, std::map<std::string, int>> seen;
  for (const Product& p : products_) {
    for (const auto& [k, v] : p.attributes) seen[k][v]++;
  }
  std::map<std::string, std::vector<std::string>> vocab;
  for (const auto& [k, values] : seen) {
    auto& list = vocab[k];
    list.reserve(values.size());
    for (const auto& [v, _] : values) list.push_back(v);
  }
  return vocab;
}

Catalogue parse_catalogue(std::istream& in, const std::string& name) {
  std::vector<Product> products;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 4) fail(name, lineno, "expected 4 tab-separated fields");
    Product p;
    try {
      p.product_id = std::stoll(fields[0]);
      p.price = std::stod(fields[1]);
      p.inventory = std::stoll(fields[2]);
    } catch (const std::exception&) {
      fail(name, lineno, "malformed numeric field");
    }
    if (p.price <= 0.0) fail(name, lineno, "price must be positive");
    if (p.inventory < 0) fail(name, lineno, "inventory must be non-negative");
    for (const std::string& kv : split(fields[3], ';')) {
      if (kv.empty()) continue;
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) fail(name, lineno, "malformed attribute '" + kv + "'");
      const std::string key = kv.substr(0, eq);
      if (!p.attributes.emplace(key, kv.substr(eq + 1)).second) {
        fail(name, lineno, "attribute key '" + key + "' appears more than once");
      }
    }
    for (const char* key : kMandatoryKeys) {
      if (!p.attributes.count(key)) {
        fail(name, lineno, std::string("missing mandatory attribute key '") + key + "'");
      }
    }
    products.push_back(std::move(p));
  }
  return Catalogue(std::move(products));
}

Catalogue load_catalogue(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open catalogue file: " + path);
  return parse_catalogue(in, path);
}

std::string format_product(const Product& p) {
  std::string out = std::to_string(p.product_id);
  out += '\t';
  out += format_f6(p.price);
  out += '\t';
  out += std::to_string(p.inventory);
  out += '\t';
  bool first = true;
  for (const auto& [k, v] : p.attributes) {
    if (!first) out += ';';
    out += k;
    out += '=';
    out += v;
    first = false;
  }
  return out;
}

void save_catalogue(const Catalogue& catalogue, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write catalogue file: " + path);
  for (const Product& p : catalogue.products()) out << format_product(p) << '\n';
}

}  // namespace ltr::corpus
