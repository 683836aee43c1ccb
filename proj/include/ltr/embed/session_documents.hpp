#pragma once

#include <map>
#include <string>
#include <vector>

#include "ltr/corpus/catalogue.hpp"
#include "ltr/corpus/sessions.hpp"

namespace ltr::embed {

using SynonymMap = std::map<std::string, std::vector<std::string>>;

// word \t syn1,syn2,...  (at most 10 synonyms are used per word)
SynonymMap load_synonyms(const std::string& path);

// Token multiset for one session: query unigrams, their synonyms and the
// attributes of every clicked product.
struct SessionDocument {
  std::vector<std::string> tokens;
};

std::vector<SessionDocument> build_documents(const std::vector<corpus::SessionLog>& logs,
                                             const corpus::Catalogue& catalogue,
                                             const SynonymMap& synonyms);

}  // namespace ltr::embed
