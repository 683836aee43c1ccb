#pragma once

#include <map>
#include <string>
#include <vector>

#include "ltr/corpus/catalogue.hpp"
#include "ltr/corpus/sessions.hpp"
#include "ltr/types.hpp"

namespace ltr::featurize {

enum class Entity { Brand, ArticleType };

inline const char* entity_key(Entity e) { return e == Entity::Brand ? "brand" : "article_type"; }

struct EntityStats {
  double revenue = 0.0;
  std::int64_t quantity = 0;
  std::int64_t impressions = 0;
  std::int64_t clicks = 0;
  double ctr() const {
    return impressions > 0 ? static_cast<double>(clicks) / static_cast<double>(impressions) : 0.0;
  }
};

// Trailing-window sums per entity value (brand or article type); an
// entity absent from the window reads as zeros (cold start).
std::map<std::string, EntityStats> entity_popularity(const std::vector<corpus::SessionLog>& logs,
                                                     const corpus::Catalogue& catalogue,
                                                     Entity entity, int window_days = 15);

// Same, restricted to sessions of one query. Product-level query metrics
// are deliberately not exposed.
std::map<std::string, EntityStats> qp_popularity(const std::vector<corpus::SessionLog>& logs,
                                                 const corpus::Catalogue& catalogue,
                                                 const std::string& query, Entity entity,
                                                 int window_days = 15);

// Single-pass per-query index over the same window, for bulk feature
// extraction.
class QpPopularityIndex {
 public:
  QpPopularityIndex(const std::vector<corpus::SessionLog>& logs,
                    const corpus::Catalogue& catalogue, int window_days = 15);
  const EntityStats& get(const std::string& query, Entity entity, const std::string& value) const;

 private:
  std::map<std::string, std::map<std::string, EntityStats>> brand_, article_type_;
  EntityStats zero_;
};

}  // namespace ltr::featurize
