#include "ltr/corpus/sessions.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "ltr/corpus/catalogue.hpp"

namespace ltr::corpus {

void SessionLog::validate() const {
  int last_pos = 0;
  for (const ImpressionEvent& e : events) {
    if (e.position <= last_pos) {
      throw ParseError("session " + std::to_string(session_id) + ": positions not increasing");
    }
    last_pos = e.position;
    if (e.carted && !e.clicked) {
      throw ParseError("session " + std::to_string(session_id) + ": carted without click");
    }
    if (e.purchased && !e.carted) {
      throw ParseError("session " + std::to_string(session_id) + ": purchased without cart");
    }
    if ((e.revenue > 0.0) != e.purchased) {
      throw ParseError("session " + std::to_string(session_id) +
                       ": revenue must be positive exactly when purchased");
    }
  }
}

QueryProductAggregate& QueryProductAggregate::operator+=(const QueryProductAggregate& o) {
  impressions += o.impressions;
  clicks += o.clicks;
  carts += o.carts;
  purchases += o.purchases;
  revenue += o.revenue;
  return *this;
}

AggregateMap aggregate(const std::vector<SessionLog>& logs) {
  if (logs.empty()) throw std::invalid_argument("aggregate: empty log list");
  AggregateMap out;
  for (const SessionLog& s : logs) {
    for (const ImpressionEvent& e : s.events) {
      QueryProductAggregate& a = out[{s.query, e.product_id}];
      a.impressions += 1;
      a.clicks += e.clicked ? 1 : 0;
      a.carts += e.carted ? 1 : 0;
      a.purchases += e.purchased ? 1 : 0;
      a.revenue += e.revenue;
    }
  }
  return out;
}

void merge_aggregates(AggregateMap& into, const AggregateMap& from) {
  for (const auto& [key, agg] : from) into[key] += agg;
}

std::vector<SessionLog> load_sessions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open session file: " + path);
  std::vector<SessionLog> logs;
  std::string line;
  std::size_t lineno = 0;
  SessionLog* current = nullptr;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        f.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (f.size() != 9) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 9 fields");
    }
    try {
      const SessionId sid = std::stoll(f[0]);
      if (!current || current->session_id != sid) {
        logs.emplace_back();
        current = &logs.back();
        current->session_id = sid;
        current->day = std::stoi(f[1]);
        current->query = f[2];
      }
      ImpressionEvent e;
      e.product_id = std::stoll(f[3]);
      e.position = std::stoi(f[4]);
      e.clicked = f[5] == "1";
      e.carted = f[6] == "1";
      e.purchased = f[7] == "1";
      e.revenue = std::stod(f[8]);
      current->events.push_back(e);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": malformed field");
    }
  }
  for (const SessionLog& s : logs) s.validate();
  return logs;
}

void save_sessions(const std::vector<SessionLog>& logs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write session file: " + path);
  std::vector<const SessionLog*> sorted;
  sorted.reserve(logs.size());
  for (const SessionLog& s : logs) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(),
            [](const SessionLog* a, const SessionLog* b) { return a->session_id < b->session_id; });
  for (const SessionLog* s : sorted) {
    for (const ImpressionEvent& e : s->events) {
      out << s->session_id << '\t' << s->day << '\t' << s->query << '\t' << e.product_id << '\t'
          << e.position << '\t' << (e.clicked ? 1 : 0) << '\t' << (e.carted ? 1 : 0) << '\t'
          << (e.purchased ? 1 : 0) << '\t' << format_f6(e.revenue) << '\n';
    }
  }
}

AggregateMap load_aggregates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open aggregates file: " + path);
  AggregateMap out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        f.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (f.size() != 7) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 7 fields");
    }
    QueryProductAggregate a;
    a.impressions = std::stoll(f[2]);
    a.clicks = std::stoll(f[3]);
    a.carts = std::stoll(f[4]);
    a.purchases = std::stoll(f[5]);
    a.revenue = std::stod(f[6]);
    out[{f[0], std::stoll(f[1])}] = a;
  }
  return out;
}

void save_aggregates(const AggregateMap& aggregates, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write aggregates file: " + path);
  for (const auto& [key, a] : aggregates) {
    out << key.first << '\t' << key.second << '\t' << a.impressions << '\t' << a.clicks << '\t'
        << a.carts << '\t' << a.purchases << '\t' << format_f6(a.revenue) << '\n';
  }
}

}  // namespace ltr::corpus
