#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "poqa/market_data.hpp"
#include "poqa/report.hpp"
#include "poqa/sweep.hpp"

namespace py = pybind11;
using namespace poqa;

namespace {

// python callbacks arrive as vector-taking functions; the solver API uses
// spans internally
Objective wrap_objective(const std::function<double(std::vector<double>)>& f) {
  return [f](std::span<const double> x) {
    return f(std::vector<double>(x.begin(), x.end()));
  };
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "portfolio optimization with VQE, QAOA, and an exact solver";
  m.attr("__version__") = POQA_VERSION;

  // ---- market data ----
  py::class_<PriceSeries>(m, "PriceSeries")
      .def(py::init<>())
      .def_readwrite("tickers", &PriceSeries::tickers)
      .def_readwrite("dates", &PriceSeries::dates)
      .def_readwrite("prices", &PriceSeries::prices)
      .def("validate", &PriceSeries::validate);

  py::class_<AssetStatistics>(m, "AssetStatistics")
      .def(py::init<>())
      .def_readwrite("mu", &AssetStatistics::mu)
      .def_readwrite("sigma", &AssetStatistics::sigma);

  m.def("load_prices", &load_prices, py::arg("path"),
        py::arg("tickers") = std::vector<std::string>{});
  m.def("compute_returns", &compute_returns);
  m.def("estimate_statistics", &estimate_statistics);
  m.def("generate_synthetic", &generate_synthetic, py::arg("n_assets"),
        py::arg("n_days"), py::arg("seed"), py::arg("drift") = kDefaultDrift,
        py::arg("vol") = kDefaultVol);
  m.def("prices_to_csv", &prices_to_csv);
  m.def("write_prices_csv", &write_prices_csv);

  // ---- encoding ----
  py::class_<PortfolioProblem>(m, "PortfolioProblem")
      .def_readonly("mu", &PortfolioProblem::mu)
      .def_readonly("sigma", &PortfolioProblem::sigma)
      .def_readonly("risk_q", &PortfolioProblem::risk_q)
      .def_readonly("budget_b", &PortfolioProblem::budget_b)
      .def_readonly("penalty_lambda", &PortfolioProblem::penalty_lambda);

  py::class_<Qubo>(m, "Qubo")
      .def(py::init<>())
      .def_readwrite("n", &Qubo::n)
      .def_readwrite("quad", &Qubo::quad)
      .def_readwrite("offset", &Qubo::offset);

  py::class_<IsingHamiltonian>(m, "IsingHamiltonian")
      .def(py::init<>())
      .def_readwrite("n", &IsingHamiltonian::n)
      .def_readwrite("h", &IsingHamiltonian::h)
      .def_readwrite("j", &IsingHamiltonian::j)
      .def_readwrite("offset", &IsingHamiltonian::offset);

  py::class_<GroundState>(m, "GroundState")
      .def_readonly("bits", &GroundState::bits)
      .def_readonly("energy", &GroundState::energy);

  m.def("default_penalty", &default_penalty);
  m.def("build_portfolio_qubo", &build_portfolio_qubo, py::arg("stats"),
        py::arg("risk_q"), py::arg("budget_b"),
        py::arg("penalty_lambda") = std::nullopt);
  m.def("evaluate_bitstring", &evaluate_bitstring);
  m.def("evaluate_index", &evaluate_index);
  m.def("qubo_to_ising", &qubo_to_ising);
  m.def("ising_energy_index", &ising_energy_index);
  m.def("exact_ground_state", &exact_ground_state);
  m.def("energy_table", &energy_table);
  m.def("index_to_bits", &index_to_bits);
  m.def("bits_to_index", &bits_to_index);

  // ---- simulator ----
  py::enum_<GateKind>(m, "GateKind")
      .value("rx", GateKind::Rx)
      .value("ry", GateKind::Ry)
      .value("rz", GateKind::Rz)
      .value("h", GateKind::H)
      .value("cx", GateKind::Cx)
      .value("cz", GateKind::Cz)
      .value("rzz", GateKind::Rzz);

  py::class_<Gate>(m, "Gate")
      .def_readonly("kind", &Gate::kind)
      .def_readonly("q0", &Gate::q0)
      .def_readonly("q1", &Gate::q1)
      .def_readonly("angle", &Gate::angle);

  m.def("rx", &rx);
  m.def("ry", &ry);
  m.def("rz", &rz);
  m.def("h", &h);
  m.def("cx", &cx);
  m.def("cz", &cz);
  m.def("rzz", &rzz);

  py::class_<Statevector>(m, "Statevector")
      .def(py::init<int>(), py::arg("n"))
      .def_property_readonly("n", &Statevector::num_qubits)
      .def("apply", py::overload_cast<const Gate&>(&Statevector::apply))
      .def("apply_all",
           [](Statevector& self, const std::vector<Gate>& gates) {
             self.apply(gates);
           })
      .def("amplitudes",
           [](const Statevector& self) {
             const auto amps = self.amplitudes();
             return std::vector<std::complex<double>>(amps.begin(),
                                                      amps.end());
           })
      .def("norm", &Statevector::norm)
      .def("expectation_diagonal",
           [](const Statevector& self, const std::vector<double>& table) {
             return self.expectation_diagonal(table);
           })
      .def("most_probable_bits", &Statevector::most_probable_bits)
      .def("sample", &Statevector::sample, py::arg("shots"), py::arg("seed"));

  // ---- circuits ----
  py::enum_<Rotation>(m, "Rotation")
      .value("rx", Rotation::Rx)
      .value("ry", Rotation::Ry);
  py::enum_<Entangler>(m, "Entangler")
      .value("cx", Entangler::Cx)
      .value("cz", Entangler::Cz);
  py::enum_<Structure>(m, "Structure")
      .value("full", Structure::Full)
      .value("circular", Structure::Circular)
      .value("pairwise", Structure::Pairwise);

  py::class_<AnsatzConfig>(m, "AnsatzConfig")
      .def(py::init<>())
      .def_readwrite("structure", &AnsatzConfig::structure)
      .def_readwrite("rotation", &AnsatzConfig::rotation)
      .def_readwrite("entangler", &AnsatzConfig::entangler)
      .def_readwrite("reps", &AnsatzConfig::reps)
      .def_readwrite("label", &AnsatzConfig::label);

  py::class_<ParamCircuit>(m, "ParamCircuit")
      .def_readonly("n", &ParamCircuit::n)
      .def_readonly("param_count", &ParamCircuit::param_count)
      .def("bind", [](const ParamCircuit& self,
                      const std::vector<double>& params) {
        return self.bind(params);
      });

  m.def("standard_configs", &standard_configs);
  m.def("config_from_label", &config_from_label);
  m.def("entanglement_pairs", &entanglement_pairs);
  m.def("build_two_local", &build_two_local);
  m.def("build_qaoa_circuit",
        [](const IsingHamiltonian& ising, int p,
           const std::vector<double>& betas,
           const std::vector<double>& gammas) {
          return build_qaoa_circuit(ising, p, betas, gammas);
        });
  m.def("simulate", [](const ParamCircuit& circuit,
                       const std::vector<double>& params) {
    return simulate(circuit, params);
  });

  // ---- solvers ----
  py::enum_<OptMethod>(m, "OptMethod")
      .value("nelder_mead", OptMethod::NelderMead)
      .value("spsa", OptMethod::Spsa);

  py::class_<OptimizerOptions>(m, "OptimizerOptions")
      .def(py::init<>())
      .def_readwrite("method", &OptimizerOptions::method)
      .def_readwrite("max_evals", &OptimizerOptions::max_evals)
      .def_readwrite("f_tol", &OptimizerOptions::f_tol)
      .def_readwrite("seed", &OptimizerOptions::seed)
      .def_readwrite("starts", &OptimizerOptions::starts)
      .def_readwrite("zero_init", &OptimizerOptions::zero_init);

  py::class_<MinimizeResult>(m, "MinimizeResult")
      .def_readonly("x", &MinimizeResult::x)
      .def_readonly("f", &MinimizeResult::f)
      .def_readonly("evals", &MinimizeResult::evals)
      .def_readonly("converged", &MinimizeResult::converged);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("params", &SolveResult::params)
      .def_readonly("energy", &SolveResult::energy)
      .def_readonly("bits", &SolveResult::bits)
      .def_readonly("evals", &SolveResult::evals)
      .def_readonly("converged", &SolveResult::converged);

  m.def("minimize",
        [](const std::function<double(std::vector<double>)>& f,
           const std::vector<double>& x0, const OptimizerOptions& opts) {
          return minimize(wrap_objective(f), x0, opts);
        });
  m.def("vqe_solve", &vqe_solve);
  m.def("qaoa_solve", &qaoa_solve);
  m.def("parameter_shift_gradient",
        [](const std::function<double(std::vector<double>)>& f,
           const std::vector<double>& theta, int index) {
          return parameter_shift_gradient(wrap_objective(f), theta, index);
        });

  // ---- sweep & reports ----
  py::enum_<Algorithm>(m, "Algorithm")
      .value("vqe", Algorithm::Vqe)
      .value("qaoa", Algorithm::Qaoa);

  py::class_<SweepGrid>(m, "SweepGrid")
      .def(py::init<>())
      .def_readwrite("risks", &SweepGrid::risks)
      .def_readwrite("configs", &SweepGrid::configs)
      .def_readwrite("algorithms", &SweepGrid::algorithms)
      .def_readwrite("stats", &SweepGrid::stats)
      .def_readwrite("budget_b", &SweepGrid::budget_b)
      .def_readwrite("penalty_lambda", &SweepGrid::penalty_lambda)
      .def_readwrite("base_seed", &SweepGrid::base_seed)
      .def_readwrite("optimizer", &SweepGrid::optimizer)
      .def_readwrite("threads", &SweepGrid::threads);

  py::class_<ExperimentRecord>(m, "ExperimentRecord")
      .def_readonly("label", &ExperimentRecord::label)
      .def_readonly("risk", &ExperimentRecord::risk)
      .def_readonly("algorithm", &ExperimentRecord::algorithm)
      .def_readonly("energy", &ExperimentRecord::energy)
      .def_readonly("bits", &ExperimentRecord::bits)
      .def_readonly("feasible", &ExperimentRecord::feasible)
      .def_readonly("matched", &ExperimentRecord::matched)
      .def_readonly("energy_gap", &ExperimentRecord::energy_gap)
      .def_readonly("evals", &ExperimentRecord::evals)
      .def_readonly("seed", &ExperimentRecord::seed)
      .def_readonly("error", &ExperimentRecord::error);

  py::class_<ExactBaseline>(m, "ExactBaseline")
      .def_readonly("risk", &ExactBaseline::risk)
      .def_readonly("ground", &ExactBaseline::ground);

  py::class_<MatchRate>(m, "MatchRate")
      .def_readonly("risk", &MatchRate::risk)
      .def_readonly("algorithm", &MatchRate::algorithm)
      .def_readonly("matched", &MatchRate::matched)
      .def_readonly("total", &MatchRate::total)
      .def_readonly("percent", &MatchRate::percent);

  py::class_<SweepReport>(m, "SweepReport")
      .def_readonly("records", &SweepReport::records)
      .def_readonly("exact", &SweepReport::exact)
      .def_readonly("rates", &SweepReport::rates);

  py::class_<RunManifest>(m, "RunManifest")
      .def(py::init<>())
      .def_readwrite("tool_version", &RunManifest::tool_version)
      .def_readwrite("timestamp", &RunManifest::timestamp)
      .def_readwrite("prices", &RunManifest::prices)
      .def_readwrite("risks", &RunManifest::risks)
      .def_readwrite("configs", &RunManifest::configs)
      .def_readwrite("algorithms", &RunManifest::algorithms)
      .def_readwrite("assets", &RunManifest::assets)
      .def_readwrite("budget", &RunManifest::budget)
      .def_readwrite("penalty_lambda", &RunManifest::penalty_lambda)
      .def_readwrite("base_seed", &RunManifest::base_seed)
      .def_readwrite("max_evals", &RunManifest::max_evals)
      .def_readwrite("f_tol", &RunManifest::f_tol)
      .def_readwrite("starts", &RunManifest::starts);

  m.def("default_grid", &default_grid);
  m.def("cell_seed", &cell_seed);
  m.def("run_sweep", &run_sweep,
        py::call_guard<py::gil_scoped_release>());
  m.def("match_rates", &match_rates);
  m.def("motivational_subset", &motivational_subset);
  m.def("report_to_csv", &report_to_csv);
  m.def("report_to_json", &report_to_json);
  m.def("report_from_json", &report_from_json);
  m.def("manifest_from_json", &manifest_from_json);
  m.def("render_match_table", &render_match_table);
  m.def("render_svg", &render_svg);
  m.def("current_timestamp", &current_timestamp);
}
