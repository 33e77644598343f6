#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "poqa/sweep.hpp"

namespace poqa {

// Everything needed to reproduce a report, embedded verbatim in JSON output.
// The timestamp is informational and excluded from reproducibility checks.
struct RunManifest {
  std::string tool_version;
  std::string timestamp;
  std::string prices;  // file path or "synthetic:<params>"
  std::vector<double> risks;
  std::vector<std::string> configs;
  std::vector<std::string> algorithms;
  int assets = 0;
  int budget = 0;
  double penalty_lambda = 0.0;
  std::uint64_t base_seed = 0;
  int max_evals = 0;
  double f_tol = 0.0;
  int starts = 0;
};

std::string current_timestamp();

// CSV with header risk,algorithm,config,energy,bits,feasible,matched,
// energy_gap,evals,seed; floating-point fields carry 17 significant digits.
std::string report_to_csv(const SweepReport& report);

std::string report_to_json(const SweepReport& report,
                           const RunManifest& manifest);
SweepReport report_from_json(const std::string& json_text);
RunManifest manifest_from_json(const std::string& json_text);

// Check/cross grid of match results, configs x risks, one block per
// algorithm.
std::string render_match_table(const SweepReport& report);

// Hand-emitted SVG: one grouped bar chart per risk (classical bar plus one
// bar per config and algorithm) followed by a match-rate chart.
std::string render_svg(const SweepReport& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace poqa
