#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "poqa/circuits.hpp"
#include "poqa/rng.hpp"

using namespace poqa;

TEST_CASE("full entanglement touches every pair once") {
  const auto pairs = entanglement_pairs(3, Structure::Full);
  const std::vector<std::pair<int, int>> expected = {{0, 1}, {0, 2}, {1, 2}};
  CHECK(pairs == expected);
  for (int n = 2; n <= 8; ++n) {
    CHECK(entanglement_pairs(n, Structure::Full).size() ==
          static_cast<std::size_t>(n * (n - 1) / 2));
  }
}

TEST_CASE("circular entanglement closes the ring first") {
  const auto pairs = entanglement_pairs(4, Structure::Circular);
  const std::vector<std::pair<int, int>> expected = {
      {3, 0}, {0, 1}, {1, 2}, {2, 3}};
  CHECK(pairs == expected);
  for (int n = 2; n <= 8; ++n) {
    CHECK(entanglement_pairs(n, Structure::Circular).size() ==
          static_cast<std::size_t>(n));
  }
}

TEST_CASE("pairwise entanglement uses disjoint pairs") {
  const auto pairs = entanglement_pairs(5, Structure::Pairwise);
  const std::vector<std::pair<int, int>> expected = {{0, 1}, {2, 3}};
  CHECK(pairs == expected);  // qubit 4 stays unpaired
  for (int n = 2; n <= 8; ++n) {
    CHECK(entanglement_pairs(n, Structure::Pairwise).size() ==
          static_cast<std::size_t>(n / 2));
  }
}

TEST_CASE("entanglement needs at least two qubits") {
  CHECK_THROWS_WITH_AS(entanglement_pairs(1, Structure::Full),
                       "entanglement needs >=2 qubits", std::invalid_argument);
}

TEST_CASE("two-local layout interleaves rotations and entanglers") {
  AnsatzConfig config{Structure::Full, Rotation::Ry, Entangler::Cz, 1, ""};
  const ParamCircuit circuit = build_two_local(2, config);
  CHECK(circuit.param_count == 4);
  REQUIRE(circuit.ops.size() == 5);
  CHECK(circuit.ops[0].gate.kind == GateKind::Ry);
  CHECK(circuit.ops[0].slot == 0);
  CHECK(circuit.ops[1].gate.kind == GateKind::Ry);
  CHECK(circuit.ops[1].slot == 1);
  CHECK(circuit.ops[2].gate.kind == GateKind::Cz);
  CHECK(circuit.ops[2].slot == -1);
  CHECK(circuit.ops[3].slot == 2);
  CHECK(circuit.ops[4].slot == 3);

  // slots bind layer-major, qubit-minor
  const std::vector<double> params = {0.1, 0.2, 0.3, 0.4};
  const auto gates = circuit.bind(params);
  CHECK(gates[0].angle == 0.1);
  CHECK(gates[1].angle == 0.2);
  CHECK(gates[3].angle == 0.3);
  CHECK(gates[4].angle == 0.4);
}

TEST_CASE("parameter count is n times reps plus one") {
  for (const AnsatzConfig& config : standard_configs()) {
    const ParamCircuit circuit = build_two_local(8, config);
    CHECK(circuit.param_count == 8 * (config.reps + 1));
  }
  AnsatzConfig deep{Structure::Circular, Rotation::Ry, Entangler::Cz, 5, ""};
  CHECK(build_two_local(8, deep).param_count == 48);
}

TEST_CASE("all-zero parameters leave the ground register untouched") {
  for (const AnsatzConfig& config : standard_configs()) {
    const ParamCircuit circuit = build_two_local(4, config);
    const std::vector<double> zero(static_cast<std::size_t>(circuit.param_count),
                                   0.0);
    const Statevector state = simulate(circuit, zero);
    CHECK(std::abs(state.amplitudes()[0] - std::complex<double>(1.0, 0.0)) <
          1e-12);
  }
}

TEST_CASE("config labels resolve to the published grid") {
  const AnsatzConfig b = config_from_label("B");
  CHECK(b.structure == Structure::Full);
  CHECK(b.rotation == Rotation::Ry);
  CHECK(b.entangler == Entangler::Cz);
  CHECK(b.reps == 3);

  const AnsatzConfig k = config_from_label("K");
  CHECK(k.structure == Structure::Full);
  CHECK(k.rotation == Rotation::Rx);
  CHECK(k.entangler == Entangler::Cx);
  CHECK(k.reps == 5);

  CHECK(standard_configs().size() == 12);
  CHECK(standard_configs().front().label == "B");
  CHECK(standard_configs().back().label == "M");
  CHECK_THROWS_WITH_AS(config_from_label("Z"), "unknown config label: Z",
                       std::invalid_argument);
}

TEST_CASE("bind rejects wrong parameter counts") {
  const ParamCircuit circuit =
      build_two_local(2, config_from_label("B"));
  CHECK_THROWS_AS(circuit.bind(std::vector<double>(3)),
                  std::invalid_argument);
}

namespace {

IsingHamiltonian small_ising() {
  IsingHamiltonian ising;
  ising.n = 2;
  ising.h = Eigen::Vector2d(1.0, 0.0);
  ising.j = Eigen::MatrixXd::Zero(2, 2);
  ising.offset = 0.0;
  return ising;
}

std::vector<double> ising_table(const IsingHamiltonian& ising) {
  std::vector<double> table(1ULL << ising.n);
  for (std::uint64_t k = 0; k < table.size(); ++k) {
    table[k] = ising_energy_index(ising, k);
  }
  return table;
}

}  // namespace

TEST_CASE("zero-angle qaoa is the uniform superposition") {
  const IsingHamiltonian ising = small_ising();
  const std::vector<double> zeros = {0.0};
  const ParamCircuit circuit = build_qaoa_circuit(ising, 1, zeros, zeros);
  const Statevector state = simulate(circuit, {});
  const auto table = ising_table(ising);
  double mean = 0.0;
  for (double v : table) mean += v;
  mean /= static_cast<double>(table.size());
  CHECK(state.expectation_diagonal(table) ==
        doctest::Approx(mean).epsilon(1e-12));
  for (const auto& a : state.amplitudes()) {
    CHECK(std::abs(std::abs(a) - 0.5) < 1e-12);
  }
}

TEST_CASE("a zero hamiltonian gives a constant energy landscape") {
  IsingHamiltonian ising;
  ising.n = 3;
  ising.h = Eigen::VectorXd::Zero(3);
  ising.j = Eigen::MatrixXd::Zero(3, 3);
  ising.offset = 2.5;
  const auto table = ising_table(ising);
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> betas(2), gammas(2);
    for (double& v : betas) v = rng.uniform(-2.0, 2.0);
    for (double& v : gammas) v = rng.uniform(-2.0, 2.0);
    const ParamCircuit circuit = build_qaoa_circuit(ising, 2, betas, gammas);
    const Statevector state = simulate(circuit, {});
    CHECK(state.expectation_diagonal(table) ==
          doctest::Approx(2.5).epsilon(1e-12));
  }
}

TEST_CASE("qaoa expectation matches the dense-unitary oracle on a grid") {
  const IsingHamiltonian ising = small_ising();
  const auto table = ising_table(ising);
  for (int ib = 0; ib < 11; ++ib) {
    for (int ig = 0; ig < 11; ++ig) {
      const double beta = -std::numbers::pi + 2.0 * std::numbers::pi * ib / 10.0;
      const double gamma =
          -std::numbers::pi + 2.0 * std::numbers::pi * ig / 10.0;
      const std::vector<double> betas = {beta};
      const std::vector<double> gammas = {gamma};
      const ParamCircuit circuit = build_qaoa_circuit(ising, 1, betas, gammas);
      const double value =
          simulate(circuit, {}).expectation_diagonal(table);
      const double expected =
          oracles::qaoa_expectation_dense(ising, betas, gammas);
      CHECK(value == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("qaoa skips vanishing coefficients and validates lengths") {
  IsingHamiltonian ising = small_ising();
  ising.h(1) = 0.0;
  const std::vector<double> one = {0.3};
  const ParamCircuit circuit = build_qaoa_circuit(ising, 1, one, one);
  // h layer (2) + one rz (h1 is zero, j empty) + mixer rx (2)
  CHECK(circuit.ops.size() == 5);

  CHECK_THROWS_AS(build_qaoa_circuit(ising, 2, one, one),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_qaoa_circuit(ising, 0, {}, {}), std::invalid_argument);
}
