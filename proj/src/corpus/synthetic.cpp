#include "ltr/corpus/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ltr/rng.hpp"

namespace ltr::corpus {

namespace {

struct CategorySpec {
  const char* name;
  std::vector<const char*> article_types;
  // fine-grained keys and their value lists
  std::vector<std::pair<const char*, std::vector<const char*>>> keys;
};

const std::vector<CategorySpec>& category_specs() {
  static const std::vector<CategorySpec> specs = {
      {"topwear",
       {"tshirt", "shirt", "sweater", "jacket", "dress"},
       {{"neck", {"round", "polo", "vneck", "collar"}},
        {"sleeve", {"full", "half", "sleeveless"}},
        {"fabric", {"cotton", "poly", "wool", "linen", "silk"}},
        {"fit", {"slim", "regular", "loose"}}}},
      {"footwear",
       {"sneaker", "sandal", "boot", "loafer", "heel"},
       {{"sole", {"rubber", "leather", "foam", "cork"}},
        {"closure", {"lace", "strap", "slip", "buckle"}},
        {"material", {"canvas", "suede", "mesh", "leather"}},
        {"toe", {"open", "closed", "pointed"}}}}};
  return specs;
}

const std::vector<std::string>& color_names() {
  static const std::vector<std::string> c = {"black", "white",  "red",    "blue",   "green",
                                             "yellow", "navy",  "pink",   "grey",   "olive",
                                             "maroon", "teal",  "purple", "orange", "beige",
                                             "brown"};
  return c;
}

std::string make_brand_name(std::mt19937_64& rng) {
  static const char* heads[] = {"z", "v", "m", "k", "t", "r", "n", "s", "d", "l", "f", "b"};
  static const char* mids[] = {"or", "an", "el", "ak", "ur", "in", "ov", "ex", "ai", "um"};
  static const char* tails[] = {"a", "o", "is", "on", "ra", "ix", "us", "en"};
  std::string name = heads[rng() % 12];
  name += mids[rng() % 10];
  name += mids[rng() % 10];
  name += tails[rng() % 8];
  if (uniform01(rng) < 0.2) {
    static const char* suffix[] = {"co", "lab", "wear"};
    name += ' ';
    name += suffix[rng() % 3];
  }
  return name;
}

// Latent per-token utilities behind the behaviour model. Funnel stages
// share a component so click/cart/buy orderings correlate without
// coinciding.
struct TokenUtility {
  double click = 0.0;
  double cart = 0.0;
  double buy = 0.0;
  double price = 0.0;
};

double key_scale(const std::string& key) {
  if (key == "brand") return 0.55;
  if (key == "article_type") return 0.30;
  if (key == "color") return 0.45;
  if (key == "master_category") return 0.0;
  return 0.50;  // fine-grained keys carry most of the quality variance
}

struct Preference {
  std::string key;
  std::string value;
  double weight = 1.0;
};

struct QueryModel {
  std::string text;
  QueryClass truth;
  std::vector<ProductId> recall;
  std::vector<Preference> prefs;     // click-stage intent
  std::vector<Preference> prefs_alt;  // cart/buy-stage intent variation
};

double match_score(const std::vector<Preference>& prefs, const Product& p) {
  double m = 0.0;
  for (const Preference& pref : prefs) {
    auto it = p.attributes.find(pref.key);
    const bool hit = it != p.attributes.end() && it->second == pref.value;
    m += pref.weight * (hit ? 1.0 : -1.0);
  }
  return m;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

void GeneratorConfig::validate() const {
  if (n_products < 10) throw std::invalid_argument("generator: n_products too small");
  if (n_queries < 4) throw std::invalid_argument("generator: n_queries too small");
  if (broad_fraction <= 0.0 || broad_fraction >= 1.0) {
    throw std::invalid_argument("generator: broad_fraction must lie in (0,1)");
  }
  if (n_sessions < 1) throw std::invalid_argument("generator: n_sessions must be positive");
  if (days < 1) throw std::invalid_argument("generator: days must be positive");
  if (min_impressions < 1 || max_impressions < min_impressions) {
    throw std::invalid_argument("generator: bad impression range");
  }
  if (broad_traffic_share <= 0.0 || broad_traffic_share >= 1.0) {
    throw std::invalid_argument("generator: broad_traffic_share must lie in (0,1)");
  }
  if (position_bias_exponent < 0.0) {
    throw std::invalid_argument("generator: position_bias_exponent must be non-negative");
  }
}

double GroundTruthOracle::click_probability(int query_index, ProductId p, int position) const {
  const auto& m = pairs.at(static_cast<std::size_t>(query_index));
  auto it = m.find(p);
  if (it == m.end()) return 0.0;
  const std::size_t bi = std::min(static_cast<std::size_t>(position - 1), position_bias.size() - 1);
  return it->second.attractiveness * position_bias[bi];
}

SyntheticData generate_synthetic(const GeneratorConfig& config, std::uint64_t seed) {
  config.validate();
  SyntheticData data;

  // ---- catalogue -------------------------------------------------------
  auto rng_cat = make_rng(derive_seed(seed, "catalogue"));
  std::vector<std::string> brands;
  {
    std::set<std::string> seen;
    while (static_cast<int>(brands.size()) < config.n_brands) {
      std::string b = make_brand_name(rng_cat);
      if (seen.insert(b).second) brands.push_back(b);
    }
  }
  const int n_colors = std::min<int>(config.n_colors, color_names().size());

  std::vector<Product> products;
  products.reserve(config.n_products);
  for (ProductId id = 1; id <= config.n_products; ++id) {
    const CategorySpec& cat = category_specs()[rng_cat() % category_specs().size()];
    Product p;
    p.product_id = id;
    p.attributes["master_category"] = cat.name;
    p.attributes["article_type"] = cat.article_types[rng_cat() % cat.article_types.size()];
    p.attributes["brand"] = brands[rng_cat() % brands.size()];
    p.attributes["color"] = color_names()[rng_cat() % n_colors];
    for (const auto& [key, values] : cat.keys) {
      p.attributes[key] = values[rng_cat() % values.size()];
    }
    p.inventory = uniform01(rng_cat) < 0.05
                      ? 0
                      : static_cast<std::int64_t>(std::lround(std::exp(normal(rng_cat, 4.3, 0.9))));
    products.push_back(std::move(p));
  }

  // ---- latent utilities ------------------------------------------------
  auto rng_util = make_rng(derive_seed(seed, "utilities"));
  Catalogue tmp(std::move(products));
  std::map<std::string, TokenUtility> util;
  const double stage_corr = 0.55;
  for (const auto& [key, values] : tmp.attribute_vocabulary()) {
    const double s = key_scale(key);
    for (const std::string& v : values) {
      const double shared = normal(rng_util);
      TokenUtility u;
      u.click = s * shared;
      u.cart = s * (stage_corr * shared + std::sqrt(1.0 - stage_corr * stage_corr) * normal(rng_util));
      u.buy = s * (stage_corr * shared + std::sqrt(1.0 - stage_corr * stage_corr) * normal(rng_util));
      u.price = normal(rng_util);
      util[key + "=" + v] = u;
    }
  }

  auto product_utility = [&](const Product& p, auto pick) {
    double q = 0.0;
    for (const auto& [k, v] : p.attributes) {
      auto it = util.find(k + "=" + v);
      if (it != util.end()) q += pick(it->second);
    }
    return q;
  };

  // prices depend on brand/article-type premiums so entity revenue is a
  // meaningful popularity signal
  std::vector<Product> priced = tmp.products();
  for (Product& p : priced) {
    const double premium = util.at("brand=" + p.brand()).price * 0.30 +
                           util.at("article_type=" + p.article_type()).price * 0.25;
    p.price = std::round(100.0 * 250.0 * std::exp(premium + 0.35 * normal(rng_util))) / 100.0;
    if (p.price < 1.0) p.price = 1.0;
  }
  data.catalogue = Catalogue(std::move(priced));

  // standardized per-stage product quality
  const std::size_t np = data.catalogue.size();
  std::vector<double> q_click(np), q_cart(np), q_buy(np), pair_eps;
  for (std::size_t i = 0; i < np; ++i) {
    const Product& p = data.catalogue.products()[i];
    q_click[i] = product_utility(p, [](const TokenUtility& u) { return u.click; });
    q_cart[i] = product_utility(p, [](const TokenUtility& u) { return u.cart; });
    q_buy[i] = product_utility(p, [](const TokenUtility& u) { return u.buy; });
    q_click[i] += 0.15 * normal(rng_util);  // idiosyncratic product appeal
    q_cart[i] += 0.15 * normal(rng_util);
    q_buy[i] += 0.15 * normal(rng_util);
  }
  auto standardize = [](std::vector<double>& v) {
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var = var / v.size();
    const double sd = var > 1e-12 ? std::sqrt(var) : 1.0;
    for (double& x : v) x = (x - mean) / sd;
  };
  standardize(q_click);
  standardize(q_cart);
  standardize(q_buy);

  std::map<ProductId, std::size_t> pidx;
  for (std::size_t i = 0; i < np; ++i) pidx[data.catalogue.products()[i].product_id] = i;

  // index products by (article_type) and (article_type, brand/color)
  std::map<std::string, std::vector<ProductId>> by_at;
  std::map<std::pair<std::string, std::string>, std::vector<ProductId>> by_at_brand, by_at_color;
  for (const Product& p : data.catalogue.products()) {
    by_at[p.article_type()].push_back(p.product_id);
    by_at_brand[{p.article_type(), p.brand()}].push_back(p.product_id);
    by_at_color[{p.article_type(), p.color()}].push_back(p.product_id);
  }

  // article-type aliases, also emitted as the synonym map
  auto rng_q = make_rng(derive_seed(seed, "queries"));
  std::map<std::string, std::string> at_alias;
  for (const CategorySpec& cat : category_specs()) {
    for (const char* at : cat.article_types) {
      std::string alias = std::string(at) + (uniform01(rng_q) < 0.5 ? "s" : "z");
      at_alias[at] = alias;
      data.synonyms[at] = {alias};
      data.synonyms[alias] = {at};
    }
  }

  // ---- queries ---------------------------------------------------------
  const int n_broad = static_cast<int>(std::llround(config.broad_fraction * config.n_queries));
  const int n_narrow = config.n_queries - n_broad;
  if (n_broad < 1 || n_narrow < 1) {
    throw std::invalid_argument("generator: broad_fraction leaves an empty class");
  }

  static const char* fillers[] = {"for", "men", "women", "online", "new"};
  std::set<std::string> used_texts;
  std::vector<QueryModel> queries;

  auto all_ats = [&] {
    std::vector<std::string> v;
    for (const auto& [at, _] : by_at) v.push_back(at);
    return v;
  }();

  auto add_filler = [&](std::vector<std::string>& words) {
    if (uniform01(rng_q) < 0.25) words.push_back(fillers[rng_q() % 5]);
  };
  auto join = [](const std::vector<std::string>& words) {
    std::string s;
    for (const auto& w : words) {
      if (!s.empty()) s += ' ';
      s += w;
    }
    return s;
  };

  auto pick_fine_pref = [&](const std::string& at, std::mt19937_64& rng) -> Preference {
    for (const CategorySpec& cat : category_specs()) {
      for (const char* a : cat.article_types) {
        if (at == a) {
          const auto& [key, values] = cat.keys[rng() % cat.keys.size()];
          return {key, values[rng() % values.size()], 1.0};
        }
      }
    }
    return {"color", color_names()[rng() % n_colors], 1.0};
  };

  auto sample_cell_union = [&](const std::vector<std::pair<std::string, std::string>>& cells,
                               std::size_t target, std::mt19937_64& rng) {
    std::vector<ProductId> pool;
    for (const auto& cell : cells) {
      auto it = by_at_brand.find(cell);
      if (it != by_at_brand.end()) pool.insert(pool.end(), it->second.begin(), it->second.end());
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    ltr::shuffle(pool, rng);
    if (pool.size() > target) pool.resize(target);
    std::sort(pool.begin(), pool.end());
    return pool;
  };

  for (int qi = 0; qi < config.n_queries; ++qi) {
    const bool broad = qi < n_broad;
    QueryModel qm;
    qm.truth = broad ? QueryClass::Broad : QueryClass::Narrow;
    for (int attempt = 0; attempt < 200; ++attempt) {
      qm.recall.clear();
      qm.prefs.clear();
      qm.prefs_alt.clear();
      std::vector<std::string> words;
      const std::string at = all_ats[rng_q() % all_ats.size()];

      if (!config.decorrelate_recall_size) {
        if (broad) {
          if (uniform01(rng_q) < 0.4) {
            const std::string color = color_names()[rng_q() % n_colors];
            qm.prefs.push_back({"color", color, 1.0});
            words.push_back(color);
          }
          if (uniform01(rng_q) < 0.3) qm.prefs.push_back(pick_fine_pref(at, rng_q));
          words.push_back(uniform01(rng_q) < 0.1 ? at_alias[at] : at);
          add_filler(words);
          qm.recall = by_at[at];
        } else if (uniform01(rng_q) < config.narrow_brand_share) {
          // brand-anchored narrow intent
          const std::string brand = brands[rng_q() % brands.size()];
          auto it = by_at_brand.find({at, brand});
          if (it == by_at_brand.end() || it->second.size() < 4) continue;
          qm.recall = it->second;
          words.push_back(brand);
          if (uniform01(rng_q) < 0.6) {
            const std::string color = color_names()[rng_q() % n_colors];
            qm.prefs.push_back({"color", color, 1.0});
            words.push_back(color);
          }
          qm.prefs.push_back(pick_fine_pref(at, rng_q));
          if (uniform01(rng_q) < 0.5) qm.prefs.push_back(pick_fine_pref(at, rng_q));
          words.push_back(uniform01(rng_q) < 0.1 ? at_alias[at] : at);
        } else {
          // colour-anchored narrow intent
          const std::string color = color_names()[rng_q() % n_colors];
          auto it = by_at_color.find({at, color});
          if (it == by_at_color.end() || it->second.size() < 4) continue;
          qm.recall = it->second;
          words.push_back(color);
          qm.prefs.push_back(pick_fine_pref(at, rng_q));
          if (uniform01(rng_q) < 0.5) qm.prefs.push_back(pick_fine_pref(at, rng_q));
          words.push_back(at);
          add_filler(words);
        }
      } else {
        // decorrelated mode: recall size is drawn from one distribution for
        // both classes; heterogeneity (cells spanned) still differs but
        // overlaps, and the query text carries independent class signal.
        const std::size_t target =
            static_cast<std::size_t>(std::exp(uniform(rng_q, std::log(25.0), std::log(320.0))));
        int cells = broad ? 3 + static_cast<int>(rng_q() % 5)
                          : (uniform01(rng_q) < 0.8 ? 1 : 2);
        std::vector<std::pair<std::string, std::string>> chosen;
        for (int c = 0; c < cells; ++c) chosen.push_back({at, brands[rng_q() % brands.size()]});
        qm.recall = sample_cell_union(chosen, target, rng_q);
        if (qm.recall.size() < 8) continue;
        const double p_brand = broad ? 0.15 : 0.85;
        if (uniform01(rng_q) < p_brand) words.push_back(chosen[0].second);
        if (uniform01(rng_q) < (broad ? 0.2 : 0.6)) {
          const std::string color = color_names()[rng_q() % n_colors];
          qm.prefs.push_back({"color", color, 1.0});
          words.push_back(color);
        }
        qm.prefs.push_back(pick_fine_pref(at, rng_q));
        words.push_back(at);
        add_filler(words);
      }

      qm.text = join(words);
      if (qm.text.empty() || qm.recall.empty()) continue;
      if (used_texts.insert(qm.text).second) break;
      qm.text.clear();
    }
    if (qm.text.empty() || qm.recall.empty()) {
      throw std::invalid_argument("generator: could not build a unique query; config infeasible");
    }
    // funnel-stage intent differs mildly from click intent
    qm.prefs_alt = qm.prefs;
    if (!qm.prefs_alt.empty() && uniform01(rng_q) < 0.5) {
      qm.prefs_alt[rng_q() % qm.prefs_alt.size()] = pick_fine_pref(all_ats[rng_q() % all_ats.size()], rng_q);
    }
    queries.push_back(std::move(qm));
  }

  // ---- oracle ----------------------------------------------------------
  data.oracle.position_bias.resize(config.max_impressions);
  for (int i = 0; i < config.max_impressions; ++i) {
    data.oracle.position_bias[i] = std::pow(static_cast<double>(i + 1), -config.position_bias_exponent);
  }
  data.oracle.pairs.resize(queries.size());

  auto rng_pairs = make_rng(derive_seed(seed, "pair-noise"));
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const QueryModel& qm = queries[qi];
    const bool broad = qm.truth == QueryClass::Broad;
    const double wq = broad ? config.broad_quality_weight : config.narrow_quality_weight;
    const double wm = broad ? config.broad_match_weight : config.narrow_match_weight;
    auto& m = data.oracle.pairs[qi];
    for (ProductId pid : qm.recall) {
      const Product& p = data.catalogue.by_id(pid);
      const std::size_t i = pidx.at(pid);
      GroundTruthOracle::PairTruth t;
      const double mz = match_score(qm.prefs, p) * 0.5;
      const double mz_alt = match_score(qm.prefs_alt, p) * 0.5;
      t.attractiveness = sigmoid(config.click_bias + wq * q_click[i] + wm * mz +
                                 config.pair_noise * normal(rng_pairs));
      t.cart_given_click = sigmoid(-0.2 + 0.8 * q_cart[i] + 0.5 * wm * mz_alt +
                                   config.pair_noise * normal(rng_pairs));
      t.buy_given_cart = sigmoid(-0.1 + 0.8 * q_buy[i] + 0.4 * wm * mz_alt +
                                 config.pair_noise * normal(rng_pairs));
      t.attractiveness = std::clamp(t.attractiveness, 1e-4, 1.0 - 1e-4);
      m[pid] = t;
    }
  }

  // ---- traffic ---------------------------------------------------------
  std::vector<double> weight(queries.size(), 0.0);
  {
    double hb = 0.0, hn = 0.0;
    for (int k = 1; k <= n_broad; ++k) hb += std::pow(k, -config.broad_zipf);
    for (int k = 1; k <= n_narrow; ++k) hn += std::pow(k, -config.narrow_zipf);
    for (int k = 0; k < n_broad; ++k) {
      weight[k] = config.broad_traffic_share * std::pow(k + 1, -config.broad_zipf) / hb;
    }
    for (int k = 0; k < n_narrow; ++k) {
      weight[n_broad + k] =
          (1.0 - config.broad_traffic_share) * std::pow(k + 1, -config.narrow_zipf) / hn;
    }
  }
  std::vector<double> cumulative(weight.size());
  std::partial_sum(weight.begin(), weight.end(), cumulative.begin());
  const double total_w = cumulative.back();

  // ---- sessions --------------------------------------------------------
  auto rng_s = make_rng(derive_seed(seed, "sessions"));
  data.sessions.reserve(config.n_sessions);
  std::vector<double> gumbel_keys;
  std::vector<std::size_t> order;
  // per-query cached arrays for the simulator hot loop
  struct QueryCache {
    std::vector<ProductId> pids;
    std::vector<double> log_attr, attr, cart, buy, price;
  };
  std::vector<QueryCache> cache(queries.size());
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    QueryCache& c = cache[qi];
    for (const auto& [pid, t] : data.oracle.pairs[qi]) {
      c.pids.push_back(pid);
      c.attr.push_back(t.attractiveness);
      c.log_attr.push_back(config.exposure_concentration * std::log(t.attractiveness));
      c.cart.push_back(t.cart_given_click);
      c.buy.push_back(t.buy_given_cart);
      c.price.push_back(data.catalogue.by_id(pid).price);
    }
  }

  for (std::int64_t s = 0; s < config.n_sessions; ++s) {
    const double u = uniform01(rng_s) * total_w;
    const std::size_t qi =
        std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
    const QueryCache& c = cache[std::min(qi, cumulative.size() - 1)];

    SessionLog log;
    log.session_id = s + 1;
    log.query = queries[std::min(qi, cumulative.size() - 1)].text;
    log.day = 1 + static_cast<int>(rng_s() % config.days);

    const std::size_t n = c.pids.size();
    const std::size_t n_imp = std::min<std::size_t>(
        n, static_cast<std::size_t>(uniform_int(rng_s, config.min_impressions, config.max_impressions)));

    // Plackett-Luce exposure: attractiveness^c weights with Gumbel keys
    gumbel_keys.resize(n);
    order.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      double uu = uniform01(rng_s);
      if (uu < 1e-300) uu = 1e-300;
      gumbel_keys[i] = c.log_attr[i] - std::log(-std::log(uu));
      order[i] = i;
    }
    std::partial_sort(order.begin(), order.begin() + n_imp, order.end(),
                      [&](std::size_t a, std::size_t b) { return gumbel_keys[a] > gumbel_keys[b]; });

    log.events.reserve(n_imp);
    for (std::size_t pos = 0; pos < n_imp; ++pos) {
      const std::size_t i = order[pos];
      ImpressionEvent e;
      e.product_id = c.pids[i];
      e.position = static_cast<int>(pos + 1);
      const double p_click = c.attr[i] * data.oracle.position_bias[pos];
      e.clicked = uniform01(rng_s) < p_click;
      if (e.clicked && uniform01(rng_s) < c.cart[i]) e.carted = true;
      if (e.carted && uniform01(rng_s) < c.buy[i]) {
        e.purchased = true;
        e.revenue = c.price[i];
      }
      log.events.push_back(e);
    }
    data.sessions.push_back(std::move(log));
  }

  data.queries.reserve(queries.size());
  for (QueryModel& qm : queries) {
    data.queries.push_back({std::move(qm.text), qm.truth, std::move(qm.recall)});
  }
  return data;
}

void save_queries(const std::vector<SyntheticQuery>& queries, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write queries file: " + path);
  for (const SyntheticQuery& q : queries) {
    out << q.text << '\t' << (q.truth == QueryClass::Broad ? "broad" : "narrow") << '\t';
    for (std::size_t i = 0; i < q.recall_set.size(); ++i) {
      if (i) out << ',';
      out << q.recall_set[i];
    }
    out << '\n';
  }
}

std::vector<SyntheticQuery> load_queries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open queries file: " + path);
  std::vector<SyntheticQuery> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 3 fields");
    }
    SyntheticQuery q;
    q.text = line.substr(0, t1);
    const std::string cls = line.substr(t1 + 1, t2 - t1 - 1);
    if (cls != "broad" && cls != "narrow") {
      throw ParseError(path + ":" + std::to_string(lineno) + ": bad class '" + cls + "'");
    }
    q.truth = cls == "broad" ? QueryClass::Broad : QueryClass::Narrow;
    std::string ids = line.substr(t2 + 1);
    std::size_t start = 0;
    for (std::size_t i = 0; i <= ids.size(); ++i) {
      if (i == ids.size() || ids[i] == ',') {
        if (i > start) q.recall_set.push_back(std::stoll(ids.substr(start, i - start)));
        start = i + 1;
      }
    }
    if (q.recall_set.empty()) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": empty recall set");
    }
    out.push_back(std::move(q));
  }
  return out;
}

void save_synonyms(const std::map<std::string, std::vector<std::string>>& synonyms,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write synonym file: " + path);
  for (const auto& [word, syns] : synonyms) {
    out << word << '\t';
    for (std::size_t i = 0; i < syns.size(); ++i) {
      if (i) out << ',';
      out << syns[i];
    }
    out << '\n';
  }
}

}  // namespace ltr::corpus
