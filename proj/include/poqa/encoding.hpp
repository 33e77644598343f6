#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poqa/market_data.hpp"

namespace poqa {

// Bit conventions, used everywhere:
//   * asset i <-> qubit i;
//   * qubit 0 is the least-significant bit of a basis-state index;
//   * displayed bitstrings list asset 0 first, so display position i is
//     bit i of the index.
std::string index_to_bits(std::uint64_t index, int n);
std::uint64_t bits_to_index(const std::string& bits);

struct PortfolioProblem {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
  double risk_q = 0.0;
  int budget_b = 0;
  double penalty_lambda = 1.0;
};

// Quadratic form over {0,1}^n. `quad` is upper triangular; the diagonal
// carries the linear terms (x^2 = x for binary x).
struct Qubo {
  int n = 0;
  Eigen::MatrixXd quad;
  double offset = 0.0;
};

// Diagonal spin Hamiltonian: E(z) = sum_i h_i z_i + sum_{i<j} j_ij z_i z_j
// + offset with z in {-1,+1}^n under the substitution x = (1 - z) / 2.
struct IsingHamiltonian {
  int n = 0;
  Eigen::VectorXd h;
  Eigen::MatrixXd j;  // upper triangular, zero diagonal
  double offset = 0.0;
};

struct GroundState {
  std::string bits;
  double energy = 0.0;
};

inline constexpr int kExactSolverMaxQubits = 24;

// Penalty weight that makes any budget violation cost more than the whole
// unpenalized objective range: 2 * (q * sum |sigma_ij| + sum |mu_i|) + 1.
double default_penalty(const AssetStatistics& stats, double risk_q);

// E(x) = q x^T sigma x - mu^T x + lambda (sum x_i - B)^2, expanded to
// Qubo form. lambda defaults via default_penalty.
std::pair<PortfolioProblem, Qubo> build_portfolio_qubo(
    const AssetStatistics& stats, double risk_q, int budget_b,
    std::optional<double> penalty_lambda = std::nullopt);

double evaluate_bitstring(const Qubo& qubo, const std::string& bits);
double evaluate_index(const Qubo& qubo, std::uint64_t index);

IsingHamiltonian qubo_to_ising(const Qubo& qubo);

// Spin-side evaluation, index interpreted with the module bit convention
// (bit set -> x=1 -> z=-1). Equals evaluate_index for every index.
double ising_energy_index(const IsingHamiltonian& ising, std::uint64_t index);

// Exhaustive minimum over all 2^n bitstrings; ties break toward the
// lexicographically smallest displayed bitstring.
GroundState exact_ground_state(const Qubo& qubo);

// Dense energy table indexed by basis state; length 2^n.
std::vector<double> energy_table(const Qubo& qubo);

}  // namespace poqa
