#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ltr/corpus/catalogue.hpp"
#include "ltr/corpus/sessions.hpp"

namespace ltr::corpus {

enum class QueryClass { Broad, Narrow };

struct GeneratorConfig {
  std::int64_t n_products = 5000;
  int n_queries = 500;
  double broad_fraction = 0.13;
  std::int64_t n_sessions = 200000;
  int days = 30;

  // catalogue shape
  int n_brands = 24;
  int n_colors = 12;

  // traffic skew: per-class Zipf exponents, class share of sessions
  double broad_traffic_share = 0.73;
  double broad_zipf = 0.9;
  double narrow_zipf = 1.25;

  // sessions
  int min_impressions = 14;
  int max_impressions = 30;
  double position_bias_exponent = 0.4;  // bias(i) = i^-exp
  double exposure_concentration = 0.8;  // Gumbel-noise weight on attractiveness when ordering

  // behaviour model: logit weights per query class
  double broad_quality_weight = 1.0;
  double broad_match_weight = 0.35;
  double narrow_quality_weight = 0.45;
  double narrow_match_weight = 1.3;
  double click_bias = -0.9;
  double pair_noise = 0.2;  // per (query, product) logit noise, all stages

  // fraction of narrow queries locked to a single brand (the rest are
  // article-type + color intents that span brands)
  double narrow_brand_share = 0.75;

  // decorrelates recall-set size from the query class and weakens the
  // coherency signal; used for classifier stress tests
  bool decorrelate_recall_size = false;

  void validate() const;  // throws std::invalid_argument on infeasible values
};

// Latent utility model behind the generated logs. Click probability for
// product p shown at position i under query q is
//   attractiveness(q, p) * position_bias[i-1],  position_bias[0] == 1.
struct GroundTruthOracle {
  std::vector<double> position_bias;  // index 0 = position 1, non-increasing
  // query index -> (product -> stage probabilities)
  struct PairTruth {
    double attractiveness = 0.0;  // click prob at position 1
    double cart_given_click = 0.0;
    double buy_given_cart = 0.0;
  };
  std::vector<std::map<ProductId, PairTruth>> pairs;

  double click_probability(int query_index, ProductId p, int position) const;
};

struct SyntheticQuery {
  std::string text;
  QueryClass truth = QueryClass::Narrow;
  std::vector<ProductId> recall_set;
};

struct SyntheticData {
  Catalogue catalogue;
  std::vector<SyntheticQuery> queries;
  std::vector<SessionLog> sessions;
  GroundTruthOracle oracle;
  // article-type aliases emitted for the synonym file, word -> synonyms
  std::map<std::string, std::vector<std::string>> synonyms;
};

// Deterministic for a given (config, seed).
SyntheticData generate_synthetic(const GeneratorConfig& config, std::uint64_t seed);

// queries file: query \t {broad|narrow} \t id,id,... (truth class + recall set)
void save_queries(const std::vector<SyntheticQuery>& queries, const std::string& path);
std::vector<SyntheticQuery> load_queries(const std::string& path);

// synonym file: word \t syn1,syn2,...
void save_synonyms(const std::map<std::string, std::vector<std::string>>& synonyms,
                   const std::string& path);

}  // namespace ltr::corpus
