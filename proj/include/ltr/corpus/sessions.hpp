#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ltr/types.hpp"

namespace ltr::corpus {

struct ImpressionEvent {
  ProductId product_id = 0;
  int position = 0;  // 1-based display slot
  bool clicked = false;
  bool carted = false;
  bool purchased = false;
  double revenue = 0.0;
};

// One query issuance and its downstream events, positions strictly
// increasing. carted implies clicked, purchased implies carted and
// revenue > 0 exactly when purchased.
struct SessionLog {
  SessionId session_id = 0;
  std::string query;
  int day = 0;
  std::vector<ImpressionEvent> events;

  void validate() const;  // throws ParseError on invariant violation
};

struct QueryRecord {
  std::string query;
  std::vector<ProductId> recall_set;
  std::size_t recall_set_size() const { return recall_set.size(); }
};

// Per (query, product) funnel counts. I >= C >= B >= Q always.
struct QueryProductAggregate {
  std::int64_t impressions = 0;  // I
  std::int64_t clicks = 0;       // C
  std::int64_t carts = 0;        // B
  std::int64_t purchases = 0;    // Q
  double revenue = 0.0;          // R

  QueryProductAggregate& operator+=(const QueryProductAggregate& o);
};

using AggregateKey = std::pair<std::string, ProductId>;
using AggregateMap = std::map<AggregateKey, QueryProductAggregate>;

// Sums events per (query, product). Associative and commutative in the
// log order; throws on empty input.
AggregateMap aggregate(const std::vector<SessionLog>& logs);
void merge_aggregates(AggregateMap& into, const AggregateMap& from);

// File format: one event per line,
// session_id \t day \t query \t product_id \t position \t clicked \t carted \t purchased \t revenue
// sorted by (session_id, position); flags are 0/1, revenue has 6 decimals.
std::vector<SessionLog> load_sessions(const std::string& path);
void save_sessions(const std::vector<SessionLog>& logs, const std::string& path);

// aggregates file: query \t product_id \t I \t C \t B \t Q \t R
AggregateMap load_aggregates(const std::string& path);
void save_aggregates(const AggregateMap& aggregates, const std::string& path);

}  // namespace ltr::corpus
