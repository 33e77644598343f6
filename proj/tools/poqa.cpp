#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "poqa/market_data.hpp"
#include "poqa/report.hpp"
#include "poqa/sweep.hpp"

namespace {

using namespace poqa;

struct ProblemArgs {
  std::string prices_path;
  int assets = 8;
  int days = 126;
  std::uint64_t gen_seed = 42;
  int budget = -1;  // -1 -> n/2
  double penalty = 0.0;
  bool has_penalty = false;
};

void add_problem_flags(CLI::App* cmd, ProblemArgs& args) {
  cmd->add_option("--prices", args.prices_path,
                  "CSV price file (header date,TICKER,...)");
  cmd->add_option("--assets", args.assets,
                  "synthetic asset count when no --prices is given");
  cmd->add_option("--days", args.days, "synthetic trading-day count");
  cmd->add_option("--gen-seed", args.gen_seed, "synthetic data seed");
  cmd->add_option("--budget", args.budget,
                  "required number of selected assets (default n/2)");
  cmd->add_option("--penalty", args.penalty,
                  "budget penalty weight (default auto)")
      ->check(CLI::PositiveNumber);
}

struct LoadedProblem {
  AssetStatistics stats;
  std::string source;
  int assets = 0;
};

LoadedProblem load_problem(const ProblemArgs& args) {
  LoadedProblem out;
  PriceSeries series;
  if (!args.prices_path.empty()) {
    series = load_prices(args.prices_path);
    out.source = args.prices_path;
  } else {
    series = generate_synthetic(args.assets, args.days, args.gen_seed);
    out.source = "synthetic:assets=" + std::to_string(args.assets) +
                 ",days=" + std::to_string(args.days) +
                 ",seed=" + std::to_string(args.gen_seed);
  }
  out.stats = estimate_statistics(compute_returns(series));
  out.assets = static_cast<int>(series.tickers.size());
  return out;
}

std::vector<AnsatzConfig> parse_configs(const std::vector<std::string>& names) {
  if (names.empty()) return standard_configs();
  std::vector<AnsatzConfig> configs;
  for (const std::string& name : names) {
    configs.push_back(config_from_label(name));
  }
  return configs;
}

RunManifest make_manifest(const SweepGrid& grid, const std::string& source,
                          int assets, int budget) {
  RunManifest m;
  m.tool_version = POQA_VERSION;
  m.timestamp = current_timestamp();
  m.prices = source;
  m.risks = grid.risks;
  for (const AnsatzConfig& c : grid.configs) m.configs.push_back(c.label);
  for (Algorithm a : grid.algorithms) m.algorithms.push_back(to_string(a));
  m.assets = assets;
  m.budget = budget;
  m.penalty_lambda = grid.penalty_lambda ? *grid.penalty_lambda : 0.0;
  m.base_seed = grid.base_seed;
  m.max_evals = grid.optimizer.max_evals;
  m.f_tol = grid.optimizer.f_tol;
  m.starts = grid.optimizer.starts;
  return m;
}

void emit(const SweepReport& report, const RunManifest& manifest,
          const std::string& format, const std::string& out_path) {
  std::string content;
  if (format == "csv") {
    content = report_to_csv(report);
  } else if (format == "json") {
    content = report_to_json(report, manifest);
  } else if (format == "svg") {
    content = render_svg(report);
  } else if (format == "table") {
    content = render_match_table(report);
  } else {
    throw CLI::ValidationError("--format", "unknown format: " + format);
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    write_text_file(out_path, content);
    std::cerr << "wrote " << out_path << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"portfolio optimization with variational quantum algorithms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(POQA_VERSION));

  // ---- data gen ----
  auto* data = app.add_subcommand("data", "price data utilities");
  data->require_subcommand(1);
  auto* gen = data->add_subcommand("gen", "generate a synthetic price CSV");
  int gen_assets = 8;
  int gen_days = 126;
  std::uint64_t gen_seed = 42;
  double gen_drift = kDefaultDrift;
  double gen_vol = kDefaultVol;
  std::string gen_out = "prices.csv";
  gen->add_option("--assets", gen_assets, "asset count")->check(CLI::PositiveNumber);
  gen->add_option("--days", gen_days, "trading-day count");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--drift", gen_drift, "per-day drift");
  gen->add_option("--vol", gen_vol, "per-day volatility");
  gen->add_option("--out", gen_out, "output CSV path");

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "run one algorithm on one problem");
  ProblemArgs solve_problem;
  add_problem_flags(solve, solve_problem);
  std::string solve_algo = "vqe";
  std::string solve_config = "B";
  double solve_risk = 0.5;
  std::uint64_t solve_seed = 42;
  int solve_max_evals = 2000;
  int solve_starts = 3;
  double solve_ftol = 1e-6;
  std::string solve_method = "nelder-mead";
  std::string solve_out;
  solve->add_option("--algo", solve_algo, "vqe or qaoa");
  solve->add_option("--config", solve_config, "ansatz config label B..M");
  solve->add_option("--risk", solve_risk, "risk factor q");
  solve->add_option("--seed", solve_seed, "optimizer seed");
  solve->add_option("--max-evals", solve_max_evals, "objective evaluation cap");
  solve->add_option("--starts", solve_starts, "multi-start count");
  solve->add_option("--f-tol", solve_ftol, "convergence tolerance");
  solve->add_option("--method", solve_method, "nelder-mead or spsa");
  solve->add_option("--out", solve_out, "result JSON path (default stdout)");

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "run the full experiment grid");
  ProblemArgs sweep_problem;
  add_problem_flags(sweep, sweep_problem);
  std::vector<double> sweep_risks;
  std::vector<std::string> sweep_configs;
  std::vector<std::string> sweep_algos;
  std::uint64_t sweep_seed = 42;
  int sweep_max_evals = 2000;
  int sweep_starts = 3;
  double sweep_ftol = 1e-6;
  std::string sweep_method = "nelder-mead";
  std::string sweep_format = "json";
  std::string sweep_out;
  int sweep_threads = 0;
  sweep->add_option("--risks", sweep_risks, "risk factors (default 0.1..0.9)");
  sweep->add_option("--configs", sweep_configs, "config labels (default B..M)");
  sweep->add_option("--algos", sweep_algos, "algorithms (default vqe qaoa)");
  sweep->add_option("--seed", sweep_seed, "base seed");
  sweep->add_option("--max-evals", sweep_max_evals, "objective evaluation cap");
  sweep->add_option("--starts", sweep_starts, "multi-start count");
  sweep->add_option("--f-tol", sweep_ftol, "convergence tolerance");
  sweep->add_option("--method", sweep_method, "nelder-mead or spsa");
  sweep->add_option("--format", sweep_format, "json, csv, svg, or table");
  sweep->add_option("--out", sweep_out, "output path (default stdout)");
  sweep->add_option("--threads", sweep_threads,
                    "worker count (0 = cores; POQA_THREADS also caps)");

  // ---- report ----
  auto* rep = app.add_subcommand("report", "re-emit a stored JSON report");
  std::string rep_in;
  std::string rep_format = "table";
  std::string rep_out;
  rep->add_option("--in", rep_in, "input report JSON")->required();
  rep->add_option("--format", rep_format, "csv, json, svg, or table");
  rep->add_option("--out", rep_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help text or the parse error
    return code == 0 ? 0 : 1;
  }

  if (gen->parsed()) {
    const PriceSeries series =
        generate_synthetic(gen_assets, gen_days, gen_seed, gen_drift, gen_vol);
    write_prices_csv(series, gen_out);
    std::cerr << "wrote " << gen_out << " (" << series.dates.size()
              << " rows, " << series.tickers.size() << " tickers)\n";
    return 0;
  }

  if (solve->parsed()) {
    const LoadedProblem problem = load_problem(solve_problem);
    const int budget = solve_problem.budget >= 0 ? solve_problem.budget
                                                 : problem.assets / 2;
    std::optional<double> penalty;
    if (solve->count("--penalty")) penalty = solve_problem.penalty;
    auto [portfolio, qubo] =
        build_portfolio_qubo(problem.stats, solve_risk, budget, penalty);
    const GroundState exact = exact_ground_state(qubo);

    OptimizerOptions opts;
    opts.max_evals = solve_max_evals;
    opts.starts = solve_starts;
    opts.f_tol = solve_ftol;
    opts.seed = solve_seed;
    opts.method = solve_method == "spsa" ? OptMethod::Spsa
                                         : OptMethod::NelderMead;

    const Algorithm algo = algorithm_from_string(solve_algo);
    const AnsatzConfig config = config_from_label(solve_config);
    SolveResult result;
    if (algo == Algorithm::Vqe) {
      result = vqe_solve(qubo, config, opts);
    } else {
      result = qaoa_solve(qubo_to_ising(qubo), config.reps, opts);
    }

    nlohmann::json j{
        {"algorithm", to_string(algo)},
        {"config", config.label},
        {"risk", solve_risk},
        {"budget", budget},
        {"penalty_lambda", portfolio.penalty_lambda},
        {"seed", solve_seed},
        {"energy", result.energy},
        {"bits", result.bits},
        {"evals", result.evals},
        {"converged", result.converged},
        {"params", result.params},
        {"exact", {{"bits", exact.bits}, {"energy", exact.energy}}},
        {"matched", result.bits == exact.bits},
        {"energy_gap", result.energy - exact.energy},
        {"prices", problem.source},
    };
    const std::string text = j.dump(2) + "\n";
    if (solve_out.empty() || solve_out == "-") {
      std::cout << text;
    } else {
      write_text_file(solve_out, text);
      std::cerr << "wrote " << solve_out << "\n";
    }
    return 0;
  }

  if (sweep->parsed()) {
    const LoadedProblem problem = load_problem(sweep_problem);
    SweepGrid grid = default_grid(problem.stats, sweep_seed);
    if (!sweep_risks.empty()) grid.risks = sweep_risks;
    grid.configs = parse_configs(sweep_configs);
    if (!sweep_algos.empty()) {
      grid.algorithms.clear();
      for (const std::string& name : sweep_algos) {
        grid.algorithms.push_back(algorithm_from_string(name));
      }
    }
    if (sweep_problem.budget >= 0) grid.budget_b = sweep_problem.budget;
    if (sweep->count("--penalty")) grid.penalty_lambda = sweep_problem.penalty;
    grid.optimizer.max_evals = sweep_max_evals;
    grid.optimizer.starts = sweep_starts;
    grid.optimizer.f_tol = sweep_ftol;
    grid.optimizer.method = sweep_method == "spsa" ? OptMethod::Spsa
                                                   : OptMethod::NelderMead;
    grid.threads = sweep_threads;

    const SweepReport report = run_sweep(grid);
    const RunManifest manifest =
        make_manifest(grid, problem.source, problem.assets,
                      grid.budget_b >= 0 ? grid.budget_b : problem.assets / 2);
    emit(report, manifest, sweep_format, sweep_out);
    return 0;
  }

  if (rep->parsed()) {
    std::ifstream in(rep_in);
    if (!in) throw std::runtime_error("cannot open report: " + rep_in);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const SweepReport report = report_from_json(buffer.str());
    RunManifest manifest;
    try {
      manifest = manifest_from_json(buffer.str());
    } catch (const std::exception&) {
      manifest.tool_version = POQA_VERSION;
      manifest.timestamp = current_timestamp();
    }
    emit(report, manifest, rep_format, rep_out);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error&) {
    return 1;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
