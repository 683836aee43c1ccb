#pragma once

#include <map>
#include <string>
#include <vector>

#include "ltr/corpus/catalogue.hpp"
#include "ltr/types.hpp"

namespace ltr::featurize {

// Coarse grouping that scopes one autoencoder's attribute vocabulary.
// Generated catalogues carry it as an explicit attribute; otherwise the
// article type stands in.
std::string master_category(const corpus::Product& product);

// Ordered (key, value) -> slot map for one master category.
class OneHotVocab {
 public:
  OneHotVocab() = default;
  OneHotVocab(const corpus::Catalogue& catalogue, const std::string& category);

  const std::string& category() const { return category_; }
  std::size_t dimension() const { return slots_.size(); }
  const std::vector<std::pair<std::string, std::string>>& slots() const { return slots_; }

  struct Encoded {
    VecD bits;
    bool flagged = false;  // some attribute value was unknown to the vocabulary
  };
  // Exactly one 1 per attribute key present in the vocabulary; an unknown
  // value leaves its key's block all-zero and flags the row.
  Encoded onehot(const corpus::Product& product) const;

 private:
  std::string category_;
  std::vector<std::pair<std::string, std::string>> slots_;
  std::map<std::pair<std::string, std::string>, std::size_t> index_;
  std::map<std::string, int> keys_;  // keys covered by this vocabulary
};

// Distinct categories present in a catalogue, sorted.
std::vector<std::string> master_categories(const corpus::Catalogue& catalogue);

}  // namespace ltr::featurize
