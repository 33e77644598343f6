#include "poqa/encoding.hpp"

#include <cmath>
#include <stdexcept>

namespace poqa {
namespace {

std::uint64_t reverse_bits(std::uint64_t value, int n) {
  std::uint64_t out = 0;
  for (int i = 0; i < n; ++i) {
    out = (out << 1) | ((value >> i) & 1ULL);
  }
  return out;
}

void check_qubo(const Qubo& qubo) {
  if (qubo.n < 1 || qubo.quad.rows() != qubo.n || qubo.quad.cols() != qubo.n) {
    throw std::invalid_argument("dimension mismatch in Qubo");
  }
}

}  // namespace

std::string index_to_bits(std::uint64_t index, int n) {
  std::string bits(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((index >> i) & 1ULL) bits[static_cast<std::size_t>(i)] = '1';
  }
  return bits;
}

std::uint64_t bits_to_index(const std::string& bits) {
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      index |= 1ULL << i;
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bitstring must contain only 0/1");
    }
  }
  return index;
}

double default_penalty(const AssetStatistics& stats, double risk_q) {
  return 2.0 * (risk_q * stats.sigma.array().abs().sum() +
                stats.mu.array().abs().sum()) +
         1.0;
}

std::pair<PortfolioProblem, Qubo> build_portfolio_qubo(
    const AssetStatistics& stats, double risk_q, int budget_b,
    std::optional<double> penalty_lambda) {
  const auto n = stats.mu.size();
  if (n < 1 || stats.sigma.rows() != n || stats.sigma.cols() != n) {
    throw std::invalid_argument("dimension mismatch between mu and sigma");
  }
  if (budget_b < 0 || budget_b > n) {
    throw std::invalid_argument("infeasible budget: B must be in [0, n]");
  }
  if (risk_q < 0.0) throw std::invalid_argument("risk factor must be >= 0");

  PortfolioProblem problem;
  problem.mu = stats.mu;
  problem.sigma = stats.sigma;
  problem.risk_q = risk_q;
  problem.budget_b = budget_b;
  problem.penalty_lambda =
      penalty_lambda ? *penalty_lambda : default_penalty(stats, risk_q);
  if (!(problem.penalty_lambda > 0.0)) {
    throw std::invalid_argument("penalty weight must be > 0");
  }

  // E(x) = q x'Sx - mu'x + lambda (sum x - B)^2 over binary x; with x^2 = x
  // the quadratic expands to the upper-triangular table below.
  const double lambda = problem.penalty_lambda;
  Qubo qubo;
  qubo.n = static_cast<int>(n);
  qubo.quad = Eigen::MatrixXd::Zero(n, n);
  qubo.offset = lambda * budget_b * budget_b;
  for (Eigen::Index i = 0; i < n; ++i) {
    qubo.quad(i, i) = risk_q * stats.sigma(i, i) - stats.mu(i) +
                      lambda * (1.0 - 2.0 * budget_b);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      qubo.quad(i, j) =
          risk_q * (stats.sigma(i, j) + stats.sigma(j, i)) + 2.0 * lambda;
    }
  }
  return {problem, qubo};
}

double evaluate_index(const Qubo& qubo, std::uint64_t index) {
  check_qubo(qubo);
  double energy = qubo.offset;
  for (int i = 0; i < qubo.n; ++i) {
    if (!((index >> i) & 1ULL)) continue;
    energy += qubo.quad(i, i);
    for (int j = i + 1; j < qubo.n; ++j) {
      if ((index >> j) & 1ULL) energy += qubo.quad(i, j);
    }
  }
  return energy;
}

double evaluate_bitstring(const Qubo& qubo, const std::string& bits) {
  if (bits.size() != static_cast<std::size_t>(qubo.n)) {
    throw std::invalid_argument("bitstring length does not match Qubo size");
  }
  return evaluate_index(qubo, bits_to_index(bits));
}

IsingHamiltonian qubo_to_ising(const Qubo& qubo) {
  check_qubo(qubo);
  IsingHamiltonian ising;
  ising.n = qubo.n;
  ising.h = Eigen::VectorXd::Zero(qubo.n);
  ising.j = Eigen::MatrixXd::Zero(qubo.n, qubo.n);
  ising.offset = qubo.offset;

  // substitute x_i = (1 - z_i) / 2
  for (int i = 0; i < qubo.n; ++i) {
    const double c = qubo.quad(i, i);
    ising.offset += c / 2.0;
    ising.h(i) -= c / 2.0;
    for (int j = i + 1; j < qubo.n; ++j) {
      const double w = qubo.quad(i, j);
      if (w == 0.0) continue;
      ising.offset += w / 4.0;
      ising.h(i) -= w / 4.0;
      ising.h(j) -= w / 4.0;
      ising.j(i, j) += w / 4.0;
    }
  }
  return ising;
}

double ising_energy_index(const IsingHamiltonian& ising, std::uint64_t index) {
  double energy = ising.offset;
  for (int i = 0; i < ising.n; ++i) {
    const double zi = ((index >> i) & 1ULL) ? -1.0 : 1.0;
    energy += ising.h(i) * zi;
    for (int j = i + 1; j < ising.n; ++j) {
      const double zj = ((index >> j) & 1ULL) ? -1.0 : 1.0;
      energy += ising.j(i, j) * zi * zj;
    }
  }
  return energy;
}

GroundState exact_ground_state(const Qubo& qubo) {
  check_qubo(qubo);
  if (qubo.n > kExactSolverMaxQubits) {
    throw std::invalid_argument("problem too large for exact solver");
  }
  const std::uint64_t count = 1ULL << qubo.n;
  std::uint64_t best_index = 0;
  std::uint64_t best_rank = 0;  // display-order value, for tie-breaking
  double best_energy = evaluate_index(qubo, 0);
  for (std::uint64_t state = 1; state < count; ++state) {
    const double energy = evaluate_index(qubo, state);
    if (energy > best_energy) continue;
    const std::uint64_t rank = reverse_bits(state, qubo.n);
    if (energy < best_energy || rank < best_rank) {
      best_energy = energy;
      best_index = state;
      best_rank = rank;
    }
  }
  GroundState ground;
  ground.bits = index_to_bits(best_index, qubo.n);
  ground.energy = best_energy;
  return ground;
}

std::vector<double> energy_table(const Qubo& qubo) {
  check_qubo(qubo);
  if (qubo.n > kExactSolverMaxQubits) {
    throw std::invalid_argument("problem too large for exact solver");
  }
  std::vector<double> table(1ULL << qubo.n);
  for (std::uint64_t k = 0; k < table.size(); ++k) {
    table[k] = evaluate_index(qubo, k);
  }
  return table;
}

}  // namespace poqa
