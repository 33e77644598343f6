#include "poqa/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "poqa/rng.hpp"

namespace poqa {
namespace {

std::string format_risk(double risk) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", risk);
  return buf;
}

int worker_count(int requested, std::size_t cells) {
  int count = requested > 0
                  ? requested
                  : static_cast<int>(std::thread::hardware_concurrency());
  if (count < 1) count = 1;
  if (const char* env = std::getenv("POQA_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) count = std::min(count, cap);
  }
  return static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(count), cells));
}

int count_selected(const std::string& bits) {
  return static_cast<int>(std::count(bits.begin(), bits.end(), '1'));
}

}  // namespace

std::string to_string(Algorithm a) {
  return a == Algorithm::Vqe ? "vqe" : "qaoa";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "vqe") return Algorithm::Vqe;
  if (name == "qaoa") return Algorithm::Qaoa;
  throw std::invalid_argument("unknown algorithm: " + name);
}

SweepGrid default_grid(const AssetStatistics& stats, std::uint64_t base_seed) {
  SweepGrid grid;
  for (int k = 1; k <= 9; ++k) grid.risks.push_back(0.1 * k);
  grid.configs = standard_configs();
  grid.algorithms = {Algorithm::Vqe, Algorithm::Qaoa};
  grid.stats = stats;
  grid.budget_b = static_cast<int>(stats.mu.size()) / 2;
  grid.base_seed = base_seed;
  return grid;
}

std::uint64_t cell_seed(std::uint64_t base_seed, const std::string& label,
                        double risk, Algorithm algorithm) {
  const std::string key = std::to_string(base_seed) + "|" + label + "|" +
                          format_risk(risk) + "|" + to_string(algorithm);
  return stable_hash(key);
}

SweepReport run_sweep(const SweepGrid& grid) {
  if (grid.risks.empty() || grid.configs.empty() || grid.algorithms.empty()) {
    throw std::invalid_argument("sweep grid must be non-empty");
  }
  const int n = static_cast<int>(grid.stats.mu.size());
  const int budget = grid.budget_b >= 0 ? grid.budget_b : n / 2;

  SweepReport report;

  // one problem + exact baseline per risk
  struct RiskCase {
    double risk;
    Qubo qubo;
    IsingHamiltonian ising;
    GroundState ground;
  };
  std::vector<RiskCase> cases;
  cases.reserve(grid.risks.size());
  for (double risk : grid.risks) {
    auto [problem, qubo] =
        build_portfolio_qubo(grid.stats, risk, budget, grid.penalty_lambda);
    RiskCase rc{risk, std::move(qubo), {}, {}};
    rc.ising = qubo_to_ising(rc.qubo);
    rc.ground = exact_ground_state(rc.qubo);
    report.exact.push_back({risk, rc.ground});
    cases.push_back(std::move(rc));
  }

  struct Cell {
    std::size_t case_index;
    Algorithm algorithm;
    AnsatzConfig config;
  };
  std::vector<Cell> cells;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    for (Algorithm algo : grid.algorithms) {
      for (const AnsatzConfig& config : grid.configs) {
        cells.push_back({c, algo, config});
      }
    }
  }

  std::vector<ExperimentRecord> records(cells.size());
  std::atomic<std::size_t> next{0};
  auto run_cell = [&](std::size_t index) {
    const Cell& cell = cells[index];
    const RiskCase& rc = cases[cell.case_index];
    ExperimentRecord rec;
    rec.label = cell.config.label.empty() ? to_string(cell.config.structure)
                                          : cell.config.label;
    rec.risk = rc.risk;
    rec.algorithm = cell.algorithm;
    rec.seed = cell_seed(grid.base_seed, rec.label, rc.risk, cell.algorithm);
    try {
      OptimizerOptions opts = grid.optimizer;
      opts.seed = rec.seed;
      SolveResult solved;
      if (cell.algorithm == Algorithm::Vqe) {
        solved = vqe_solve(rc.qubo, cell.config, opts);
      } else {
        solved = qaoa_solve(rc.ising, cell.config.reps, opts);
      }
      rec.energy = solved.energy;
      rec.bits = solved.bits;
      rec.evals = solved.evals;
      rec.feasible = count_selected(solved.bits) == budget;
      rec.matched = solved.bits == rc.ground.bits;
      rec.energy_gap = solved.energy - rc.ground.energy;
    } catch (const std::exception& ex) {
      rec.error = ex.what();
    }
    records[index] = std::move(rec);
  };

  const int workers = worker_count(grid.threads, cells.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= cells.size()) break;
          run_cell(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // deterministic record order: (risk, algorithm, label)
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = records[a];
    const auto& rb = records[b];
    if (ra.risk != rb.risk) return ra.risk < rb.risk;
    if (ra.algorithm != rb.algorithm) return ra.algorithm < rb.algorithm;
    return ra.label < rb.label;
  });
  report.records.reserve(records.size());
  for (std::size_t i : order) report.records.push_back(std::move(records[i]));

  report.rates = match_rates(report);
  return report;
}

std::vector<MatchRate> match_rates(const SweepReport& report) {
  if (report.records.empty()) {
    throw std::invalid_argument("empty report");
  }
  std::vector<MatchRate> rates;
  auto find = [&](double risk, Algorithm algo) -> MatchRate& {
    for (MatchRate& r : rates) {
      if (r.risk == risk && r.algorithm == algo) return r;
    }
    rates.push_back({risk, algo, 0, 0, 0.0});
    return rates.back();
  };
  for (const ExperimentRecord& rec : report.records) {
    if (!rec.error.empty()) continue;
    MatchRate& rate = find(rec.risk, rec.algorithm);
    rate.total += 1;
    if (rec.matched) rate.matched += 1;
  }
  for (MatchRate& rate : rates) {
    rate.percent =
        rate.total > 0
            ? std::round(1000.0 * rate.matched / rate.total) / 10.0
            : 0.0;
  }
  return rates;
}

SweepReport motivational_subset(const SweepReport& report) {
  const std::vector<double> wanted = {0.1, 0.5, 0.9};
  auto has_risk = [&](double risk) {
    for (const ExactBaseline& b : report.exact) {
      if (std::abs(b.risk - risk) < 1e-9) return true;
    }
    return false;
  };
  for (double risk : wanted) {
    if (!has_risk(risk)) {
      throw std::invalid_argument("risk not in sweep: " + format_risk(risk));
    }
  }
  auto selected = [&](double risk) {
    for (double w : wanted) {
      if (std::abs(risk - w) < 1e-9) return true;
    }
    return false;
  };
  SweepReport subset;
  for (const ExperimentRecord& rec : report.records) {
    if (selected(rec.risk)) subset.records.push_back(rec);
  }
  for (const ExactBaseline& b : report.exact) {
    if (selected(b.risk)) subset.exact.push_back(b);
  }
  subset.rates = match_rates(subset);
  return subset;
}

}  // namespace poqa
