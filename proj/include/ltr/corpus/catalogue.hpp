#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltr/types.hpp"

namespace ltr::corpus {

// Catalogue entry. `brand`, `article_type` and `color` must be present
// exactly once; extra keys depend on the product's master category.
struct Product {
  ProductId product_id = 0;
  std::map<std::string, std::string> attributes;  // key -> value, sorted by key
  double price = 0.0;
  std::int64_t inventory = 0;

  const std::string& attr(const std::string& key) const;
  const std::string& brand() const { return attr("brand"); }
  const std::string& article_type() const { return attr("article_type"); }
  const std::string& color() const { return attr("color"); }
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Catalogue {
 public:
  Catalogue() = default;
  explicit Catalogue(std::vector<Product> products);

  const std::vector<Product>& products() const { return products_; }
  const Product& by_id(ProductId id) const;
  const Product* find(ProductId id) const;
  std::size_t size() const { return products_.size(); }

  // Distinct values seen per attribute key, sorted.
  std::map<std::string, std::vector<std::string>> attribute_vocabulary() const;

 private:
  std::vector<Product> products_;  // sorted by product_id
  std::map<ProductId, std::size_t> index_;
};

// One record per line: product_id \t price \t inventory \t k=v;k=v;...
// Duplicate ids and missing mandatory keys are rejected with the line number.
Catalogue load_catalogue(const std::string& path);
Catalogue parse_catalogue(std::istream& in, const std::string& name);
void save_catalogue(const Catalogue& catalogue, const std::string& path);
std::string format_product(const Product& p);

// Fixed 6-decimal float formatting used by all corpus text files.
std::string format_f6(double v);

}  // namespace ltr::corpus
