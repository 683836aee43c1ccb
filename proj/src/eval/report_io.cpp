#include "ltr/eval/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ltr::eval {

namespace {
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}
}  // namespace

nlohmann::json report_to_json(const std::vector<EvalReport>& reports,
                              const CrossTargetMatrix& cross_target,
                              const std::vector<AblationCell>& ablation,
                              const SegmentComparison& segments,
                              const std::vector<BaselineComparisonRow>& baseline,
                              const EvalOptions& options) {
  nlohmann::json j;
  j["k"] = options.k;
  j["bins"] = options.bins;
  j["models"] = nlohmann::json::array();
  for (const EvalReport& r : reports) {
    nlohmann::json e;
    e["model"] = r.model_id;
    e["target"] = r.target;
    e["segment"] = r.segment;
    e["ndcg"] = r.mean_ndcg;
    e["evaluated"] = r.evaluated;
    e["excluded"] = r.excluded;
    j["models"].push_back(std::move(e));
  }
  if (!cross_target.empty()) j["cross_target"] = cross_target;
  if (!ablation.empty()) {
    j["ablation"] = nlohmann::json::array();
    for (const AblationCell& c : ablation) {
      j["ablation"].push_back({{"kind", c.kind}, {"mask", c.mask}, {"ndcg", c.ndcg}});
    }
  }
  if (!segments.empty()) j["segment_comparison"] = segments;
  if (!baseline.empty()) {
    j["baseline_comparison"] = nlohmann::json::array();
    for (const BaselineComparisonRow& r : baseline) {
      j["baseline_comparison"].push_back({{"segment", r.segment},
                                          {"baseline", r.baseline_ndcg},
                                          {"letor", r.letor_ndcg},
                                          {"relative_improvement", r.relative_improvement}});
    }
  }
  return j;
}

std::string render_report_text(const nlohmann::json& report) {
  std::ostringstream out;
  out << "NDCG@" << report.at("k").get<int>() << " (b=" << report.at("bins").get<int>() << ")\n";
  if (report.contains("models")) {
    out << "\nmodels\n";
    for (const auto& e : report.at("models")) {
      out << "  " << e.at("model").get<std::string>() << "  target=" << e.at("target").get<std::string>()
          << "  segment=" << e.at("segment").get<std::string>() << "  ndcg="
          << fmt(e.at("ndcg").get<double>()) << "  (n=" << e.at("evaluated").get<std::size_t>()
          << ", excluded=" << e.at("excluded").get<std::size_t>() << ")\n";
    }
  }
  if (report.contains("cross_target")) {
    out << "\ncross-target (rows train, cols test)\n";
    const auto& m = report.at("cross_target");
    std::vector<std::string> targets;
    for (const auto& [k, _] : m.items()) targets.push_back(k);
    out << "  train\\test";
    for (const auto& t : targets) out << '\t' << t;
    out << '\n';
    for (const auto& t1 : targets) {
      out << "  " << t1;
      for (const auto& t2 : targets) out << '\t' << fmt(m.at(t1).at(t2).get<double>());
      out << '\n';
    }
  }
  if (report.contains("ablation")) {
    out << "\nfeature ablation\n";
    for (const auto& c : report.at("ablation")) {
      out << "  " << c.at("kind").get<std::string>() << "  " << c.at("mask").get<std::string>()
          << "  " << fmt(c.at("ndcg").get<double>()) << '\n';
    }
  }
  if (report.contains("segment_comparison")) {
    out << "\ncombined vs specialized\n";
    for (const auto& [model, row] : report.at("segment_comparison").items()) {
      out << "  " << model;
      for (const auto& [seg, v] : row.items()) out << "  " << seg << "=" << fmt(v.get<double>());
      out << '\n';
    }
  }
  if (report.contains("baseline_comparison")) {
    out << "\nbaseline vs letor\n";
    for (const auto& r : report.at("baseline_comparison")) {
      out << "  " << r.at("segment").get<std::string>() << "  baseline="
          << fmt(r.at("baseline").get<double>()) << "  letor=" << fmt(r.at("letor").get<double>())
          << "  improvement=" << fmt(100.0 * r.at("relative_improvement").get<double>()) << "%\n";
    }
  }
  return out.str();
}

std::string render_ablation_svg(const std::vector<AblationCell>& cells) {
  std::set<std::string> kind_set, mask_set;
  for (const AblationCell& c : cells) {
    kind_set.insert(c.kind);
    mask_set.insert(c.mask);
  }
  const std::vector<std::string> kinds(kind_set.begin(), kind_set.end());
  const std::vector<std::string> masks(mask_set.begin(), mask_set.end());
  static const char* palette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#9c755f"};

  const int width = 120 + static_cast<int>(masks.size() * (kinds.size() * 22 + 30));
  const int height = 320;
  const int base_y = 260;
  const double scale = 220.0;

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "'>\n";
  svg << "<text x='20' y='24' font-size='14'>mean NDCG by feature combination</text>\n";
  for (int grid = 0; grid <= 5; ++grid) {
    const double v = grid * 0.2;
    const int y = base_y - static_cast<int>(v * scale);
    svg << "<line x1='50' y1='" << y << "' x2='" << width - 20 << "' y2='" << y
        << "' stroke='#dddddd'/>\n";
    svg << "<text x='16' y='" << y + 4 << "' font-size='10'>" << fmt(v).substr(0, 4) << "</text>\n";
  }
  int x = 60;
  for (const std::string& mask : masks) {
    for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
      double v = 0.0;
      for (const AblationCell& c : cells) {
        if (c.kind == kinds[ki] && c.mask == mask) v = c.ndcg;
      }
      const int h = static_cast<int>(std::max(0.0, v) * scale);
      svg << "<rect x='" << x << "' y='" << base_y - h << "' width='18' height='" << h
          << "' fill='" << palette[ki % 5] << "'/>\n";
      x += 22;
    }
    svg << "<text x='" << x - 11 - static_cast<int>(kinds.size()) * 11 << "' y='" << base_y + 16
        << "' font-size='11' text-anchor='middle'>" << mask << "</text>\n";
    x += 30;
  }
  int lx = 60;
  for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
    svg << "<rect x='" << lx << "' y='290' width='12' height='12' fill='" << palette[ki % 5]
        << "'/>\n";
    svg << "<text x='" << lx + 16 << "' y='300' font-size='11'>" << kinds[ki] << "</text>\n";
    lx += 20 + static_cast<int>(kinds[ki].size()) * 7 + 16;
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_ablation_svg(const nlohmann::json& report, const std::string& path) {
  std::vector<AblationCell> cells;
  if (report.contains("ablation")) {
    for (const auto& c : report.at("ablation")) {
      cells.push_back({c.at("kind").get<std::string>(), c.at("mask").get<std::string>(),
                       c.at("ndcg").get<double>()});
    }
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write svg: " + path);
  out << render_ablation_svg(cells);
}

}  // namespace ltr::eval
