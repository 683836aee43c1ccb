#include "ltr/featurize/popularity.hpp"

#include <algorithm>

namespace ltr::featurize {

namespace {

int window_start(const std::vector<corpus::SessionLog>& logs, int window_days) {
  int max_day = 0;
  for (const corpus::SessionLog& s : logs) max_day = std::max(max_day, s.day);
  return max_day - window_days + 1;
}

void accumulate(std::map<std::string, EntityStats>& stats, const corpus::SessionLog& s,
                const corpus::Catalogue& catalogue, Entity entity) {
  for (const corpus::ImpressionEvent& e : s.events) {
    const corpus::Product* p = catalogue.find(e.product_id);
    if (!p) continue;
    EntityStats& st = stats[p->attr(entity_key(entity))];
    st.impressions += 1;
    st.clicks += e.clicked ? 1 : 0;
    st.quantity += e.purchased ? 1 : 0;
    st.revenue += e.revenue;
  }
}

}  // namespace

std::map<std::string, EntityStats> entity_popularity(const std::vector<corpus::SessionLog>& logs,
                                                     const corpus::Catalogue& catalogue,
                                                     Entity entity, int window_days) {
  const int start = window_start(logs, window_days);
  std::map<std::string, EntityStats> stats;
  for (const corpus::SessionLog& s : logs) {
    if (s.day < start) continue;
    accumulate(stats, s, catalogue, entity);
  }
  return stats;
}

std::map<std::string, EntityStats> qp_popularity(const std::vector<corpus::SessionLog>& logs,
                                                 const corpus::Catalogue& catalogue,
                                                 const std::string& query, Entity entity,
                                                 int window_days) {
  const int start = window_start(logs, window_days);
  std::map<std::string, EntityStats> stats;
  for (const corpus::SessionLog& s : logs) {
    if (s.day < start || s.query != query) continue;
    accumulate(stats, s, catalogue, entity);
  }
  return stats;
}

QpPopularityIndex::QpPopularityIndex(const std::vector<corpus::SessionLog>& logs,
                                     const corpus::Catalogue& catalogue, int window_days) {
  const int start = window_start(logs, window_days);
  for (const corpus::SessionLog& s : logs) {
    if (s.day < start) continue;
    accumulate(brand_[s.query], s, catalogue, Entity::Brand);
    accumulate(article_type_[s.query], s, catalogue, Entity::ArticleType);
  }
}

const EntityStats& QpPopularityIndex::get(const std::string& query, Entity entity,
                                          const std::string& value) const {
  const auto& outer = entity == Entity::Brand ? brand_ : article_type_;
  auto qit = outer.find(query);
  if (qit == outer.end()) return zero_;
  auto vit = qit->second.find(value);
  return vit == qit->second.end() ? zero_ : vit->second;
}

}  // namespace ltr::featurize
