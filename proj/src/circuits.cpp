#include "poqa/circuits.hpp"

#include <stdexcept>

namespace poqa {

std::string to_string(Rotation r) { return r == Rotation::Rx ? "rx" : "ry"; }
std::string to_string(Entangler e) { return e == Entangler::Cx ? "cx" : "cz"; }
std::string to_string(Structure s) {
  switch (s) {
    case Structure::Full: return "full";
    case Structure::Circular: return "circular";
    case Structure::Pairwise: return "pairwise";
  }
  return "?";
}

const std::vector<AnsatzConfig>& standard_configs() {
  static const std::vector<AnsatzConfig> configs = {
      {Structure::Full, Rotation::Ry, Entangler::Cz, 3, "B"},
      {Structure::Pairwise, Rotation::Ry, Entangler::Cz, 3, "C"},
      {Structure::Circular, Rotation::Ry, Entangler::Cz, 3, "D"},
      {Structure::Full, Rotation::Ry, Entangler::Cz, 5, "E"},
      {Structure::Pairwise, Rotation::Ry, Entangler::Cz, 5, "F"},
      {Structure::Circular, Rotation::Ry, Entangler::Cz, 5, "G"},
      {Structure::Full, Rotation::Rx, Entangler::Cx, 3, "H"},
      {Structure::Pairwise, Rotation::Rx, Entangler::Cx, 3, "I"},
      {Structure::Circular, Rotation::Rx, Entangler::Cx, 3, "J"},
      {Structure::Full, Rotation::Rx, Entangler::Cx, 5, "K"},
      {Structure::Pairwise, Rotation::Rx, Entangler::Cx, 5, "L"},
      {Structure::Circular, Rotation::Rx, Entangler::Cx, 5, "M"},
  };
  return configs;
}

AnsatzConfig config_from_label(const std::string& label) {
  for (const AnsatzConfig& c : standard_configs()) {
    if (c.label == label) return c;
  }
  throw std::invalid_argument("unknown config label: " + label);
}

std::vector<std::pair<int, int>> entanglement_pairs(int n,
                                                    Structure structure) {
  if (n < 2) throw std::invalid_argument("entanglement needs >=2 qubits");
  std::vector<std::pair<int, int>> pairs;
  switch (structure) {
    case Structure::Full:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
      break;
    case Structure::Circular:
      pairs.emplace_back(n - 1, 0);
      for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
      break;
    case Structure::Pairwise:
      for (int i = 0; i + 1 < n; i += 2) pairs.emplace_back(i, i + 1);
      break;
  }
  return pairs;
}

std::vector<Gate> ParamCircuit::bind(std::span<const double> params) const {
  if (params.size() != static_cast<std::size_t>(param_count)) {
    throw std::invalid_argument("parameter vector length mismatch");
  }
  std::vector<Gate> gates;
  gates.reserve(ops.size());
  for (const ParamOp& op : ops) {
    Gate g = op.gate;
    if (op.slot >= 0) g.angle = params[static_cast<std::size_t>(op.slot)];
    gates.push_back(g);
  }
  return gates;
}

ParamCircuit build_two_local(int n, const AnsatzConfig& config) {
  if (n < 2) throw std::invalid_argument("two-local ansatz needs >=2 qubits");
  if (config.reps < 1) throw std::invalid_argument("reps must be >= 1");

  const auto pairs = entanglement_pairs(n, config.structure);
  ParamCircuit circuit;
  circuit.n = n;
  int slot = 0;

  auto rotation_layer = [&] {
    for (int q = 0; q < n; ++q) {
      Gate g = (config.rotation == Rotation::Rx) ? rx(q, 0.0) : ry(q, 0.0);
      circuit.ops.push_back({g, slot++});
    }
  };

  rotation_layer();
  for (int r = 0; r < config.reps; ++r) {
    for (const auto& [a, b] : pairs) {
      Gate g = (config.entangler == Entangler::Cx) ? cx(a, b) : cz(a, b);
      circuit.ops.push_back({g, -1});
    }
    rotation_layer();
  }
  circuit.param_count = slot;
  return circuit;
}

ParamCircuit build_qaoa_circuit(const IsingHamiltonian& ising, int p,
                                std::span<const double> betas,
                                std::span<const double> gammas) {
  if (p < 1) throw std::invalid_argument("QAOA needs p >= 1");
  if (betas.size() != static_cast<std::size_t>(p) ||
      gammas.size() != static_cast<std::size_t>(p)) {
    throw std::invalid_argument("parameter vectors must have length p");
  }

  ParamCircuit circuit;
  circuit.n = ising.n;
  for (int q = 0; q < ising.n; ++q) circuit.ops.push_back({h(q), -1});
  for (int layer = 0; layer < p; ++layer) {
    const double gamma = gammas[static_cast<std::size_t>(layer)];
    const double beta = betas[static_cast<std::size_t>(layer)];
    for (int i = 0; i < ising.n; ++i) {
      if (ising.h(i) != 0.0) {
        circuit.ops.push_back({rz(i, 2.0 * gamma * ising.h(i)), -1});
      }
    }
    for (int i = 0; i < ising.n; ++i) {
      for (int j = i + 1; j < ising.n; ++j) {
        if (ising.j(i, j) != 0.0) {
          circuit.ops.push_back({rzz(i, j, 2.0 * gamma * ising.j(i, j)), -1});
        }
      }
    }
    for (int q = 0; q < ising.n; ++q) {
      circuit.ops.push_back({rx(q, 2.0 * beta), -1});
    }
  }
  circuit.param_count = 0;
  return circuit;
}

Statevector simulate(const ParamCircuit& circuit,
                     std::span<const double> params) {
  Statevector state(circuit.n);
  const auto gates = circuit.bind(params);
  state.apply(gates);
  return state;
}

}  // namespace poqa
