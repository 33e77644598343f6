#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "poqa/encoding.hpp"
#include "poqa/solvers.hpp"

namespace poqa {

enum class Algorithm { Vqe, Qaoa };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);

struct SweepGrid {
  std::vector<double> risks;           // default 0.1 .. 0.9 step 0.1
  std::vector<AnsatzConfig> configs;   // default the B..M grid
  std::vector<Algorithm> algorithms;   // default {vqe, qaoa}
  AssetStatistics stats;
  int budget_b = -1;                   // -1 -> n/2
  std::optional<double> penalty_lambda;
  std::uint64_t base_seed = 42;
  OptimizerOptions optimizer;          // per-cell seed overrides opts.seed
  int threads = 0;                     // 0 -> hardware count; POQA_THREADS caps
};

SweepGrid default_grid(const AssetStatistics& stats, std::uint64_t base_seed);

struct ExperimentRecord {
  std::string label;
  double risk = 0.0;
  Algorithm algorithm = Algorithm::Vqe;
  double energy = 0.0;
  std::string bits;
  bool feasible = false;    // budget satisfied by `bits`
  bool matched = false;     // bits equal the exact ground-state bits
  double energy_gap = 0.0;  // energy - exact ground energy
  int evals = 0;
  std::uint64_t seed = 0;
  std::string error;        // non-empty marks a failed run
};

struct ExactBaseline {
  double risk = 0.0;
  GroundState ground;
};

struct MatchRate {
  double risk = 0.0;
  Algorithm algorithm = Algorithm::Vqe;
  int matched = 0;
  int total = 0;       // errored runs excluded
  double percent = 0.0;
};

struct SweepReport {
  std::vector<ExperimentRecord> records;  // ordered by (risk, algorithm, label)
  std::vector<ExactBaseline> exact;
  std::vector<MatchRate> rates;
};

// Per-cell seed: stable hash of (base_seed, label, risk, algorithm), so
// adding grid cells never changes existing results.
std::uint64_t cell_seed(std::uint64_t base_seed, const std::string& label,
                        double risk, Algorithm algorithm);

// Run the whole grid. Cells execute on a bounded worker pool; failures are
// recorded, not fatal; output order does not depend on scheduling.
SweepReport run_sweep(const SweepGrid& grid);

// Percentage of non-errored runs whose bits match the exact solver, per
// (risk, algorithm), one-decimal rounding.
std::vector<MatchRate> match_rates(const SweepReport& report);

// View restricted to risks {0.1, 0.5, 0.9}; throws if one is missing.
SweepReport motivational_subset(const SweepReport& report);

}  // namespace poqa
