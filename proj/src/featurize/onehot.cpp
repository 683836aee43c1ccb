#include "ltr/featurize/onehot.hpp"

#include <algorithm>
#include <set>

namespace ltr::featurize {

std::string master_category(const corpus::Product& product) {
  auto it = product.attributes.find("master_category");
  if (it != product.attributes.end()) return it->second;
  return product.article_type();
}

std::vector<std::string> master_categories(const corpus::Catalogue& catalogue) {
  std::set<std::string> cats;
  for (const corpus::Product& p : catalogue.products()) cats.insert(master_category(p));
  return {cats.begin(), cats.end()};
}

OneHotVocab::OneHotVocab(const corpus::Catalogue& catalogue, const std::string& category)
    : category_(category) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const corpus::Product& p : catalogue.products()) {
    if (master_category(p) != category) continue;
    for (const auto& [k, v] : p.attributes) {
      if (k == "master_category") continue;
      seen.insert({k, v});
    }
  }
  for (const auto& kv : seen) {
    index_[kv] = slots_.size();
    slots_.push_back(kv);
    keys_[kv.first] += 1;
  }
}

OneHotVocab::Encoded OneHotVocab::onehot(const corpus::Product& product) const {
  Encoded enc;
  enc.bits = VecD::Zero(static_cast<Eigen::Index>(slots_.size()));
  bool any = false;
  for (const auto& [k, v] : product.attributes) {
    if (k == "master_category") continue;
    if (!keys_.count(k)) continue;  // key not covered at all
    auto it = index_.find({k, v});
    if (it == index_.end()) {
      enc.flagged = true;  // known key, unknown value: block stays zero
    } else {
      enc.bits[static_cast<Eigen::Index>(it->second)] = 1.0;
      any = true;
    }
  }
  if (!any) enc.flagged = true;
  return enc;
}

}  // namespace ltr::featurize
