#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "poqa/circuits.hpp"
#include "poqa/encoding.hpp"

namespace poqa {

using Objective = std::function<double(std::span<const double>)>;

enum class OptMethod { NelderMead, Spsa };

struct OptimizerOptions {
  OptMethod method = OptMethod::NelderMead;
  int max_evals = 2000;   // per local minimization
  double f_tol = 1e-6;    // absolute spread tolerance
  std::uint64_t seed = 0;
  int starts = 3;         // independent restarts, best result kept
  bool zero_init = false; // start VQE from all-zero angles instead of random
};

struct MinimizeResult {
  std::vector<double> x;
  double f = 0.0;
  int evals = 0;
  bool converged = false;
};

// Derivative-free local minimization from x0.
//   Nelder-Mead: reflection/expansion/contraction/shrink = 1, 2, 0.5, 0.5,
//   initial simplex step 0.1 per coordinate, stops when the simplex objective
//   spread drops below f_tol and the simplex itself has collapsed.
//   SPSA: gains a_k = a/(k+1+A)^0.602, c_k = c/(k+1)^0.101 with a=0.2, c=0.1,
//   A = max_evals/10; the incumbent never regresses.
MinimizeResult minimize(const Objective& f, std::span<const double> x0,
                        const OptimizerOptions& opts);

struct SolveResult {
  std::vector<double> params;
  double energy = 0.0;
  std::string bits;
  int evals = 0;
  bool converged = false;
};

// Minimize the exact energy expectation of the two-local ansatz over the
// Qubo's energy table. Each start draws its initial angles uniformly from
// [-pi, pi) using a seed derived from opts.seed; the best start wins.
SolveResult vqe_solve(const Qubo& qubo, const AnsatzConfig& config,
                      const OptimizerOptions& opts);

// Minimize the QAOA energy for a diagonal Hamiltonian, layer by layer.
//
// The cost coefficients of a penalized portfolio Hamiltonian live on two very
// different scales (the penalty dominates every coupling, the signal sits in
// the fields), so a useful gamma must be searched on the scale set by the
// coefficients themselves. Each layer is seeded from a coarse scan of
// (beta, gamma) with gamma ranging up to pi / (2 * median nonzero |h|), then
// all 2p parameters are polished with the configured local optimizer.
// Starts differ by which scan candidate seeds the first layer and by a small
// seeded jitter. Deterministic for fixed (Hamiltonian, p, opts).
SolveResult qaoa_solve(const IsingHamiltonian& ising, int p,
                       const OptimizerOptions& opts);

// (f(theta + pi/2 e_i) - f(theta - pi/2 e_i)) / 2, exact for rx/ry/rz slots.
double parameter_shift_gradient(const Objective& f,
                                std::span<const double> theta, int index);

}  // namespace poqa
