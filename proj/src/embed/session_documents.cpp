#include "ltr/embed/session_documents.hpp"

#include <fstream>

#include "ltr/embed/embedding_table.hpp"

namespace ltr::embed {

SynonymMap load_synonyms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw corpus::ParseError("cannot open synonym file: " + path);
  SynonymMap map;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw corpus::ParseError(path + ": missing tab in synonym line");
    std::vector<std::string> syns;
    const std::string rest = line.substr(tab + 1);
    std::size_t start = 0;
    for (std::size_t i = 0; i <= rest.size(); ++i) {
      if (i == rest.size() || rest[i] == ',') {
        if (i > start) syns.push_back(rest.substr(start, i - start));
        start = i + 1;
      }
    }
    if (syns.size() > 10) syns.resize(10);  // top-10 synonyms per word
    map[line.substr(0, tab)] = std::move(syns);
  }
  return map;
}

std::vector<SessionDocument> build_documents(const std::vector<corpus::SessionLog>& logs,
                                             const corpus::Catalogue& catalogue,
                                             const SynonymMap& synonyms) {
  std::vector<SessionDocument> docs;
  docs.reserve(logs.size());
  for (const corpus::SessionLog& s : logs) {
    SessionDocument doc;
    for (const std::string& w : query_unigrams(s.query)) {
      doc.tokens.push_back(w);
      if (auto it = synonyms.find(w); it != synonyms.end()) {
        const std::size_t n = std::min<std::size_t>(it->second.size(), 10);
        for (std::size_t i = 0; i < n; ++i) doc.tokens.push_back(it->second[i]);
      }
    }
    for (const corpus::ImpressionEvent& e : s.events) {
      if (!e.clicked) continue;
      const corpus::Product* p = catalogue.find(e.product_id);
      if (!p) continue;
      for (const auto& [k, v] : p->attributes) doc.tokens.push_back(attribute_token(k, v));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace ltr::embed
