#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "poqa/encoding.hpp"
#include "poqa/simulator.hpp"

namespace poqa {

enum class Rotation { Rx, Ry };
enum class Entangler { Cx, Cz };
enum class Structure { Full, Circular, Pairwise };

std::string to_string(Rotation r);
std::string to_string(Entangler e);
std::string to_string(Structure s);

// One design point of the two-local ansatz family.
struct AnsatzConfig {
  Structure structure = Structure::Full;
  Rotation rotation = Rotation::Ry;
  Entangler entangler = Entangler::Cz;
  int reps = 3;
  std::string label;  // "B".."M" for the standard design grid
};

// The named design grid:
//   B=(full,ry,cz,3)  C=(pairwise,ry,cz,3)  D=(circular,ry,cz,3)
//   E=(full,ry,cz,5)  F=(pairwise,ry,cz,5)  G=(circular,ry,cz,5)
//   H=(full,rx,cx,3)  I=(pairwise,rx,cx,3)  J=(circular,rx,cx,3)
//   K=(full,rx,cx,5)  L=(pairwise,rx,cx,5)  M=(circular,rx,cx,5)
const std::vector<AnsatzConfig>& standard_configs();
AnsatzConfig config_from_label(const std::string& label);

// Qubit pairs touched by one entanglement layer:
//   full     -> all (i,j), i<j, lexicographic;
//   circular -> (n-1,0) first, then the linear chain;
//   pairwise -> disjoint pairs (0,1),(2,3),... (odd qubit left unpaired).
std::vector<std::pair<int, int>> entanglement_pairs(int n, Structure structure);

// Gate whose rotation angle may be a free parameter slot.
struct ParamOp {
  Gate gate;
  int slot = -1;  // >= 0: angle comes from params[slot]
};

struct ParamCircuit {
  int n = 0;
  std::vector<ParamOp> ops;
  int param_count = 0;

  std::vector<Gate> bind(std::span<const double> params) const;
};

// Rotation layer, then reps x [entanglement layer, rotation layer].
// Parameter slots are numbered layer-major, qubit-minor; param_count is
// n * (reps + 1).
ParamCircuit build_two_local(int n, const AnsatzConfig& config);

// h on every qubit, then p x [cost layer: rz(2 gamma h_i), rzz(2 gamma j_ij);
// mixer layer: rx(2 beta)]. The Hamiltonian offset only contributes a global
// phase and is ignored here; expectation code adds it classically.
ParamCircuit build_qaoa_circuit(const IsingHamiltonian& ising, int p,
                                std::span<const double> betas,
                                std::span<const double> gammas);

Statevector simulate(const ParamCircuit& circuit,
                     std::span<const double> params);

}  // namespace poqa
