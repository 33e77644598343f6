#include "poqa/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace poqa {
namespace {

using nlohmann::json;

std::string full_precision(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", value);
  return buf;
}

std::string compact(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

json record_to_json(const ExperimentRecord& rec) {
  json j{{"label", rec.label},
         {"risk", rec.risk},
         {"algorithm", to_string(rec.algorithm)},
         {"seed", rec.seed}};
  if (rec.error.empty()) {
    j["energy"] = rec.energy;
    j["bits"] = rec.bits;
    j["feasible"] = rec.feasible;
    j["matched"] = rec.matched;
    j["energy_gap"] = rec.energy_gap;
    j["evals"] = rec.evals;
  } else {
    j["error"] = rec.error;
  }
  return j;
}

ExperimentRecord record_from_json(const json& j) {
  ExperimentRecord rec;
  rec.label = j.at("label").get<std::string>();
  rec.risk = j.at("risk").get<double>();
  rec.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
  rec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("error")) {
    rec.error = j.at("error").get<std::string>();
  } else {
    rec.energy = j.at("energy").get<double>();
    rec.bits = j.at("bits").get<std::string>();
    rec.feasible = j.at("feasible").get<bool>();
    rec.matched = j.at("matched").get<bool>();
    rec.energy_gap = j.at("energy_gap").get<double>();
    rec.evals = j.at("evals").get<int>();
  }
  return rec;
}

struct ChartGeometry {
  double width = 900.0;
  double height = 240.0;
  double margin_left = 70.0;
  double margin_bottom = 34.0;
  double margin_top = 26.0;
};

void append_bar_chart(std::string& svg, double y_offset,
                      const std::string& title,
                      const std::vector<std::string>& labels,
                      const std::vector<double>& values,
                      const std::vector<std::string>& colors,
                      const std::string& y_caption) {
  const ChartGeometry g;
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  if (hi - lo < 1e-15) hi = lo + 1.0;
  const double pad = 0.06 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double plot_w = g.width - g.margin_left - 16.0;
  const double plot_h = g.height - g.margin_top - g.margin_bottom;
  const double x0 = g.margin_left;
  const double y_base = y_offset + g.margin_top + plot_h;
  const double slot = plot_w / static_cast<double>(values.size());
  const double bar_w = slot * 0.72;

  svg += "<text x=\"" + compact(x0) + "\" y=\"" +
         compact(y_offset + 16.0) + "\" font-size=\"13\" " +
         "font-family=\"sans-serif\" font-weight=\"bold\">" + title +
         "</text>\n";
  // axes
  svg += "<line x1=\"" + compact(x0) + "\" y1=\"" + compact(y_base) +
         "\" x2=\"" + compact(x0 + plot_w) + "\" y2=\"" + compact(y_base) +
         "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + compact(x0) + "\" y1=\"" +
         compact(y_offset + g.margin_top) + "\" x2=\"" + compact(x0) +
         "\" y2=\"" + compact(y_base) + "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"" + compact(x0 - 6.0) + "\" y=\"" +
         compact(y_offset + g.margin_top + 10.0) +
         "\" font-size=\"10\" font-family=\"sans-serif\" text-anchor=\"end\">" +
         compact(hi) + "</text>\n";
  svg += "<text x=\"" + compact(x0 - 6.0) + "\" y=\"" + compact(y_base) +
         "\" font-size=\"10\" font-family=\"sans-serif\" text-anchor=\"end\">" +
         compact(lo) + "</text>\n";
  svg += "<text x=\"14\" y=\"" + compact(y_offset + g.margin_top + plot_h / 2.0) +
         "\" font-size=\"10\" font-family=\"sans-serif\" " +
         "transform=\"rotate(-90 14 " +
         compact(y_offset + g.margin_top + plot_h / 2.0) + ")\" " +
         "text-anchor=\"middle\">" + y_caption + "</text>\n";

  for (std::size_t i = 0; i < values.size(); ++i) {
    const double frac = (values[i] - lo) / (hi - lo);
    const double bh = std::max(frac * plot_h, 0.5);
    const double bx = x0 + slot * static_cast<double>(i) + (slot - bar_w) / 2.0;
    svg += "<rect class=\"bar\" x=\"" + compact(bx) + "\" y=\"" +
           compact(y_base - bh) + "\" width=\"" + compact(bar_w) +
           "\" height=\"" + compact(bh) + "\" fill=\"" + colors[i] + "\"/>\n";
    svg += "<text x=\"" + compact(bx + bar_w / 2.0) + "\" y=\"" +
           compact(y_base + 13.0) +
           "\" font-size=\"9\" font-family=\"sans-serif\" "
           "text-anchor=\"middle\">" +
           labels[i] + "</text>\n";
  }
}

}  // namespace

std::string current_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec);
  return buf;
}

std::string report_to_csv(const SweepReport& report) {
  std::string out =
      "risk,algorithm,config,energy,bits,feasible,matched,energy_gap,evals,"
      "seed\n";
  for (const ExperimentRecord& rec : report.records) {
    if (!rec.error.empty()) continue;
    out += full_precision(rec.risk);
    out += ',';
    out += to_string(rec.algorithm);
    out += ',';
    out += rec.label;
    out += ',';
    out += full_precision(rec.energy);
    out += ',';
    out += rec.bits;
    out += ',';
    out += rec.feasible ? "true" : "false";
    out += ',';
    out += rec.matched ? "true" : "false";
    out += ',';
    out += full_precision(rec.energy_gap);
    out += ',';
    out += std::to_string(rec.evals);
    out += ',';
    out += std::to_string(rec.seed);
    out += '\n';
  }
  return out;
}

std::string report_to_json(const SweepReport& report,
                           const RunManifest& manifest) {
  json j;
  j["manifest"] = {{"tool_version", manifest.tool_version},
                   {"timestamp", manifest.timestamp},
                   {"prices", manifest.prices},
                   {"risks", manifest.risks},
                   {"configs", manifest.configs},
                   {"algorithms", manifest.algorithms},
                   {"assets", manifest.assets},
                   {"budget", manifest.budget},
                   {"penalty_lambda", manifest.penalty_lambda},
                   {"base_seed", manifest.base_seed},
                   {"max_evals", manifest.max_evals},
                   {"f_tol", manifest.f_tol},
                   {"starts", manifest.starts}};
  j["records"] = json::array();
  for (const ExperimentRecord& rec : report.records) {
    j["records"].push_back(record_to_json(rec));
  }
  j["exact"] = json::array();
  for (const ExactBaseline& b : report.exact) {
    j["exact"].push_back({{"risk", b.risk},
                          {"bits", b.ground.bits},
                          {"energy", b.ground.energy}});
  }
  j["match_rates"] = json::array();
  for (const MatchRate& r : report.rates) {
    j["match_rates"].push_back({{"risk", r.risk},
                                {"algorithm", to_string(r.algorithm)},
                                {"matched", r.matched},
                                {"total", r.total},
                                {"percent", r.percent}});
  }
  return j.dump(2) + "\n";
}

SweepReport report_from_json(const std::string& json_text) {
  const json j = json::parse(json_text);
  SweepReport report;
  for (const json& rec : j.at("records")) {
    report.records.push_back(record_from_json(rec));
  }
  for (const json& b : j.at("exact")) {
    ExactBaseline baseline;
    baseline.risk = b.at("risk").get<double>();
    baseline.ground.bits = b.at("bits").get<std::string>();
    baseline.ground.energy = b.at("energy").get<double>();
    report.exact.push_back(std::move(baseline));
  }
  for (const json& r : j.at("match_rates")) {
    MatchRate rate;
    rate.risk = r.at("risk").get<double>();
    rate.algorithm = algorithm_from_string(r.at("algorithm").get<std::string>());
    rate.matched = r.at("matched").get<int>();
    rate.total = r.at("total").get<int>();
    rate.percent = r.at("percent").get<double>();
    report.rates.push_back(rate);
  }
  return report;
}

RunManifest manifest_from_json(const std::string& json_text) {
  const json j = json::parse(json_text).at("manifest");
  RunManifest m;
  m.tool_version = j.at("tool_version").get<std::string>();
  m.timestamp = j.at("timestamp").get<std::string>();
  m.prices = j.at("prices").get<std::string>();
  m.risks = j.at("risks").get<std::vector<double>>();
  m.configs = j.at("configs").get<std::vector<std::string>>();
  m.algorithms = j.at("algorithms").get<std::vector<std::string>>();
  m.assets = j.at("assets").get<int>();
  m.budget = j.at("budget").get<int>();
  m.penalty_lambda = j.at("penalty_lambda").get<double>();
  m.base_seed = j.at("base_seed").get<std::uint64_t>();
  m.max_evals = j.at("max_evals").get<int>();
  m.f_tol = j.at("f_tol").get<double>();
  m.starts = j.at("starts").get<int>();
  return m;
}

std::string render_match_table(const SweepReport& report) {
  std::vector<double> risks;
  for (const ExactBaseline& b : report.exact) risks.push_back(b.risk);
  std::sort(risks.begin(), risks.end());

  std::set<std::string> label_set;
  for (const ExperimentRecord& r : report.records) label_set.insert(r.label);
  std::vector<std::string> labels(label_set.begin(), label_set.end());

  auto lookup = [&](Algorithm algo, const std::string& label,
                    double risk) -> const ExperimentRecord* {
    for (const ExperimentRecord& r : report.records) {
      if (r.algorithm == algo && r.label == label &&
          std::abs(r.risk - risk) < 1e-9) {
        return &r;
      }
    }
    return nullptr;
  };

  std::ostringstream out;
  for (Algorithm algo : {Algorithm::Vqe, Algorithm::Qaoa}) {
    bool any = false;
    for (const ExperimentRecord& r : report.records) {
      if (r.algorithm == algo) any = true;
    }
    if (!any) continue;
    out << to_string(algo) << " vs exact eigensolver\n";
    out << "config";
    for (double risk : risks) out << "  q=" << compact(risk);
    out << '\n';
    for (const std::string& label : labels) {
      out << "   " << label << "  ";
      for (double risk : risks) {
        const ExperimentRecord* rec = lookup(algo, label, risk);
        const char* mark = "     ";
        if (rec != nullptr) {
          mark = !rec->error.empty() ? "  !  "
                                     : (rec->matched ? "  ✓  " : "  ✗  ");
        }
        out << mark << ' ';
      }
      out << '\n';
    }
    out << '\n';
  }
  return out.str();
}

std::string render_svg(const SweepReport& report) {
  std::vector<double> risks;
  for (const ExactBaseline& b : report.exact) risks.push_back(b.risk);
  std::sort(risks.begin(), risks.end());

  std::set<std::string> label_set;
  for (const ExperimentRecord& r : report.records) label_set.insert(r.label);
  std::vector<std::string> labels(label_set.begin(), label_set.end());

  const std::string color_exact = "#1f77b4";
  const std::string color_vqe = "#2ca02c";
  const std::string color_qaoa = "#ff7f0e";

  const double chart_h = 240.0;
  const double gap = 18.0;
  const double total_h =
      (static_cast<double>(risks.size()) + 1.0) * (chart_h + gap) + 20.0;

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" "
                    "height=\"" + compact(total_h) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"900\" height=\"" + compact(total_h) +
         "\" fill=\"white\"/>\n";

  double y = 10.0;
  for (double risk : risks) {
    std::vector<std::string> bar_labels{"exact"};
    std::vector<double> values;
    std::vector<std::string> colors{color_exact};
    for (const ExactBaseline& b : report.exact) {
      if (std::abs(b.risk - risk) < 1e-9) values.push_back(b.ground.energy);
    }
    for (Algorithm algo : {Algorithm::Vqe, Algorithm::Qaoa}) {
      for (const std::string& label : labels) {
        for (const ExperimentRecord& rec : report.records) {
          if (rec.algorithm == algo && rec.label == label &&
              std::abs(rec.risk - risk) < 1e-9 && rec.error.empty()) {
            bar_labels.push_back(label);
            values.push_back(rec.energy);
            colors.push_back(algo == Algorithm::Vqe ? color_vqe : color_qaoa);
          }
        }
      }
    }
    append_bar_chart(svg, y, "ground state energy, risk = " + compact(risk),
                     bar_labels, values, colors, "energy");
    y += chart_h + gap;
  }

  // match-rate chart across risks
  std::vector<std::string> rate_labels;
  std::vector<double> rate_values;
  std::vector<std::string> rate_colors;
  for (double risk : risks) {
    for (const MatchRate& r : report.rates) {
      if (std::abs(r.risk - risk) > 1e-9) continue;
      rate_labels.push_back(to_string(r.algorithm) + " " + compact(risk));
      rate_values.push_back(r.percent);
      rate_colors.push_back(r.algorithm == Algorithm::Vqe ? color_vqe
                                                          : color_qaoa);
    }
  }
  if (!rate_values.empty()) {
    append_bar_chart(svg, y, "match rate vs exact eigensolver (%)",
                     rate_labels, rate_values, rate_colors, "% matched");
  }
  svg += "</svg>\n";
  return svg;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace poqa
