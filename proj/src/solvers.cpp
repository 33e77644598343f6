#include "poqa/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "poqa/rng.hpp"

namespace poqa {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSimplexXTol = 1e-6;

// Wraps an objective so the best point ever evaluated is never lost; the
// reported result can then never regress below the initial point.
class TrackedObjective {
 public:
  TrackedObjective(const Objective& f, int budget)
      : f_(f), budget_(budget) {}

  double operator()(std::span<const double> x) {
    const double value = f_(x);
    ++evals_;
    if (value < best_f_) {
      best_f_ = value;
      best_x_.assign(x.begin(), x.end());
    }
    return value;
  }

  bool exhausted() const { return evals_ >= budget_; }
  int evals() const { return evals_; }
  double best_f() const { return best_f_; }
  const std::vector<double>& best_x() const { return best_x_; }

 private:
  const Objective& f_;
  int budget_;
  int evals_ = 0;
  double best_f_ = kInf;
  std::vector<double> best_x_;
};

MinimizeResult nelder_mead(const Objective& f, std::span<const double> x0,
                           const OptimizerOptions& opts) {
  const std::size_t d = x0.size();
  TrackedObjective obj(f, opts.max_evals);

  std::vector<std::vector<double>> simplex;
  simplex.reserve(d + 1);
  simplex.emplace_back(x0.begin(), x0.end());
  for (std::size_t i = 0; i < d; ++i) {
    auto v = simplex[0];
    v[i] += 0.1;
    simplex.push_back(std::move(v));
  }
  std::vector<double> fv(d + 1, kInf);
  for (std::size_t i = 0; i <= d && !obj.exhausted(); ++i) {
    fv[i] = obj(simplex[i]);
  }

  bool converged = false;
  std::vector<std::size_t> order(d + 1);
  while (!obj.exhausted()) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    {
      std::vector<std::vector<double>> s2(d + 1);
      std::vector<double> f2(d + 1);
      for (std::size_t i = 0; i <= d; ++i) {
        s2[i] = std::move(simplex[order[i]]);
        f2[i] = fv[order[i]];
      }
      simplex = std::move(s2);
      fv = std::move(f2);
    }
    // objective spread alone can hit zero on a simplex straddling a
    // symmetric minimum, so the simplex must also have collapsed in x
    double x_spread = 0.0;
    for (std::size_t i = 1; i <= d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        x_spread = std::max(x_spread, std::abs(simplex[i][j] - simplex[0][j]));
      }
    }
    if (fv[d] - fv[0] < opts.f_tol && x_spread < kSimplexXTol) {
      converged = true;
      break;
    }

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) centroid[j] += simplex[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(d);

    auto blend = [&](const std::vector<double>& from, double coeff) {
      std::vector<double> out(d);
      for (std::size_t j = 0; j < d; ++j) {
        out[j] = centroid[j] + coeff * (from[j] - centroid[j]);
      }
      return out;
    };

    const auto reflected = blend(simplex[d], -1.0);
    const double fr = obj(reflected);

    if (fr < fv[0]) {
      if (!obj.exhausted()) {
        const auto expanded = blend(simplex[d], -2.0);
        const double fe = obj(expanded);
        if (fe < fr) {
          simplex[d] = expanded;
          fv[d] = fe;
        } else {
          simplex[d] = reflected;
          fv[d] = fr;
        }
      } else {
        simplex[d] = reflected;
        fv[d] = fr;
      }
    } else if (fr < fv[d - 1]) {
      simplex[d] = reflected;
      fv[d] = fr;
    } else {
      const auto& base = (fr < fv[d]) ? reflected : simplex[d];
      std::vector<double> contracted(d);
      for (std::size_t j = 0; j < d; ++j) {
        contracted[j] = centroid[j] + 0.5 * (base[j] - centroid[j]);
      }
      if (obj.exhausted()) break;
      const double fc = obj(contracted);
      if (fc < std::min(fr, fv[d])) {
        simplex[d] = contracted;
        fv[d] = fc;
      } else if (fr < fv[d]) {
        simplex[d] = reflected;
        fv[d] = fr;
      } else {
        // shrink toward the best vertex
        for (std::size_t i = 1; i <= d; ++i) {
          for (std::size_t j = 0; j < d; ++j) {
            simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
          }
          if (obj.exhausted()) break;
          fv[i] = obj(simplex[i]);
        }
      }
    }
  }

  MinimizeResult result;
  result.x = obj.best_x();
  result.f = obj.best_f();
  result.evals = obj.evals();
  result.converged = converged;
  return result;
}

MinimizeResult spsa(const Objective& f, std::span<const double> x0,
                    const OptimizerOptions& opts) {
  const std::size_t d = x0.size();
  TrackedObjective obj(f, opts.max_evals);
  Rng rng(opts.seed);

  const double a = 0.2;
  const double c = 0.1;
  const double big_a = static_cast<double>(opts.max_evals) / 10.0;

  std::vector<double> x(x0.begin(), x0.end());
  obj(x);  // evaluate start point so the incumbent is defined

  std::vector<double> plus(d), minus(d);
  int flat_streak = 0;
  bool converged = false;
  for (int k = 0; obj.evals() + 2 <= opts.max_evals; ++k) {
    const double ak = a / std::pow(k + 1 + big_a, 0.602);
    const double ck = c / std::pow(k + 1, 0.101);
    for (std::size_t j = 0; j < d; ++j) {
      const double delta = (rng.next_u64() & 1ULL) ? 1.0 : -1.0;
      plus[j] = x[j] + ck * delta;
      minus[j] = x[j] - ck * delta;
    }
    const double fp = obj(plus);
    const double fm = obj(minus);
    for (std::size_t j = 0; j < d; ++j) {
      const double delta = (plus[j] - x[j]) / ck;
      x[j] -= ak * (fp - fm) / (2.0 * ck * delta);
    }
    flat_streak = (std::abs(fp - fm) < opts.f_tol) ? flat_streak + 1 : 0;
    if (flat_streak >= 10) {
      converged = true;
      break;
    }
  }

  MinimizeResult result;
  result.x = obj.best_x();
  result.f = obj.best_f();
  result.evals = obj.evals();
  result.converged = converged;
  return result;
}

double median_of(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  if (values.size() % 2 == 1) return values[m];
  return 0.5 * (values[m - 1] + values[m]);
}

}  // namespace

MinimizeResult minimize(const Objective& f, std::span<const double> x0,
                        const OptimizerOptions& opts) {
  if (x0.empty()) throw std::invalid_argument("empty parameter vector");
  if (opts.max_evals < 1) throw std::invalid_argument("max_evals must be >= 1");
  if (!(opts.f_tol > 0.0)) throw std::invalid_argument("f_tol must be > 0");
  return opts.method == OptMethod::Spsa ? spsa(f, x0, opts)
                                        : nelder_mead(f, x0, opts);
}

SolveResult vqe_solve(const Qubo& qubo, const AnsatzConfig& config,
                      const OptimizerOptions& opts) {
  const ParamCircuit circuit = build_two_local(qubo.n, config);
  const std::vector<double> table = energy_table(qubo);
  const Objective objective = [&](std::span<const double> theta) {
    return simulate(circuit, theta).expectation_diagonal(table);
  };

  const int starts = std::max(opts.starts, 1);
  SolveResult best;
  best.energy = kInf;
  int total_evals = 0;
  for (int s = 0; s < starts; ++s) {
    OptimizerOptions local = opts;
    local.seed = split_seed(opts.seed, static_cast<std::uint64_t>(s));
    Rng rng(local.seed);
    std::vector<double> theta0(static_cast<std::size_t>(circuit.param_count));
    if (!opts.zero_init) {
      for (double& t : theta0) {
        t = rng.uniform(-std::numbers::pi, std::numbers::pi);
      }
    }
    const MinimizeResult r = minimize(objective, theta0, local);
    total_evals += r.evals;
    if (r.f < best.energy) {
      best.params = r.x;
      best.energy = r.f;
      best.converged = r.converged;
    }
  }
  best.evals = total_evals;
  best.bits = simulate(circuit, best.params).most_probable_bits();
  return best;
}

namespace {

// Fast evaluation path for the QAOA objective. The cost unitary is diagonal,
// so one phase pass per layer replaces the per-gate rz/rzz sequence; the
// result agrees with simulating build_qaoa_circuit to rounding.
class QaoaEvaluator {
 public:
  explicit QaoaEvaluator(const IsingHamiltonian& ising) : n_(ising.n) {
    const std::uint64_t dim = 1ULL << n_;
    table_.resize(dim);
    cost_.resize(dim);
    for (std::uint64_t k = 0; k < dim; ++k) {
      table_[k] = ising_energy_index(ising, k);
      cost_[k] = table_[k] - ising.offset;
    }
    base_.assign(dim, std::complex<double>(
                          1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  }

  int evals() const { return evals_; }
  const std::vector<double>& table() const { return table_; }

  void apply_cost(std::vector<std::complex<double>>& amp, double gamma) const {
    for (std::uint64_t k = 0; k < amp.size(); ++k) {
      amp[k] *= std::polar(1.0, -gamma * cost_[k]);
    }
  }

  void apply_mixer(std::vector<std::complex<double>>& amp, double beta) const {
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    const std::complex<double> is(0.0, -s);
    for (int q = 0; q < n_; ++q) {
      const std::uint64_t bit = 1ULL << q;
      for (std::uint64_t k = 0; k < amp.size(); ++k) {
        if (k & bit) continue;
        const std::complex<double> a0 = amp[k];
        const std::complex<double> a1 = amp[k | bit];
        amp[k] = c * a0 + is * a1;
        amp[k | bit] = is * a0 + c * a1;
      }
    }
  }

  std::vector<std::complex<double>> state_for(
      std::span<const double> betas, std::span<const double> gammas) const {
    auto amp = base_;
    for (std::size_t l = 0; l < betas.size(); ++l) {
      apply_cost(amp, gammas[l]);
      apply_mixer(amp, betas[l]);
    }
    return amp;
  }

  double expectation(const std::vector<std::complex<double>>& amp) const {
    double value = 0.0;
    for (std::uint64_t k = 0; k < amp.size(); ++k) {
      value += std::norm(amp[k]) * table_[k];
    }
    return value;
  }

  // x = [betas..., gammas...]
  double energy(int layers, std::span<const double> x) {
    ++evals_;
    const auto amp =
        state_for(x.subspan(0, static_cast<std::size_t>(layers)),
                  x.subspan(static_cast<std::size_t>(layers)));
    return expectation(amp);
  }

  const std::vector<std::complex<double>>& base() const { return base_; }
  void count(int n) { evals_ += n; }

 private:
  int n_;
  std::vector<double> table_;
  std::vector<double> cost_;
  std::vector<std::complex<double>> base_;
  int evals_ = 0;
};

struct ScanCandidate {
  double energy;
  double beta;
  double gamma;
};

// ramp extension of a p-layer schedule to p+1 layers
void interp_extend(std::vector<double>& values) {
  const int p = static_cast<int>(values.size());
  std::vector<double> out(static_cast<std::size_t>(p) + 1);
  for (int i = 1; i <= p + 1; ++i) {
    const double prev = (i >= 2) ? values[static_cast<std::size_t>(i - 2)] : 0.0;
    const double curr =
        (i <= p) ? values[static_cast<std::size_t>(i - 1)] : 0.0;
    out[static_cast<std::size_t>(i - 1)] =
        ((i - 1) * prev + (p - i + 1) * curr) / static_cast<double>(p);
  }
  values = std::move(out);
}

}  // namespace

SolveResult qaoa_solve(const IsingHamiltonian& ising, int p,
                       const OptimizerOptions& opts) {
  if (p < 1) throw std::invalid_argument("QAOA needs p >= 1");
  if (ising.n < 1 || ising.n > kExactSolverMaxQubits) {
    throw std::invalid_argument("Hamiltonian size out of range");
  }

  QaoaEvaluator eval(ising);

  // Scan geometry from the coefficient scales of the Hamiltonian: gamma must
  // reach pi / (2 * field scale) before field-level energy differences turn
  // into O(1) phases, and the grid must resolve the coupling-scale
  // oscillation period along the way.
  std::vector<double> habs, jabs;
  for (int i = 0; i < ising.n; ++i) {
    if (ising.h(i) != 0.0) habs.push_back(std::abs(ising.h(i)));
    for (int j = i + 1; j < ising.n; ++j) {
      if (ising.j(i, j) != 0.0) jabs.push_back(std::abs(ising.j(i, j)));
    }
  }
  const double med_h = !habs.empty() ? median_of(habs)
                       : !jabs.empty() ? median_of(jabs)
                                       : 1.0;
  const double coupling_scale = !jabs.empty() ? 2.0 * median_of(jabs) : 1.0;
  const double gamma_max =
      std::min(std::numbers::pi / (2.0 * med_h), 20000.0);
  const int n_gamma = std::clamp(static_cast<int>(gamma_max * coupling_scale),
                                 400, 6000);
  const int n_beta = 4;
  const int starts = std::max(opts.starts, 1);

  // best `keep` appended-layer candidates on the (beta, gamma) grid, with the
  // given prefix state held fixed
  auto scan_append = [&](const std::vector<std::complex<double>>& prefix,
                         std::size_t keep) {
    std::vector<ScanCandidate> top;
    std::vector<std::complex<double>> after_cost;
    std::vector<std::complex<double>> probe;
    for (int ig = 0; ig < n_gamma; ++ig) {
      const double gamma = gamma_max * (ig + 0.5) / n_gamma;
      after_cost = prefix;
      eval.apply_cost(after_cost, gamma);
      for (int ib = 0; ib < n_beta; ++ib) {
        const double beta = std::numbers::pi * (ib + 0.5) / (2.0 * n_beta);
        probe = after_cost;
        eval.apply_mixer(probe, beta);
        eval.count(1);
        const ScanCandidate cand{eval.expectation(probe), beta, gamma};
        if (top.size() < keep) {
          top.push_back(cand);
          std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) {
            return a.energy < b.energy;
          });
        } else if (cand.energy < top.back().energy) {
          top.back() = cand;
          std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) {
            return a.energy < b.energy;
          });
        }
      }
    }
    return top;
  };

  const auto first_layer =
      scan_append(eval.base(), static_cast<std::size_t>(starts));

  SolveResult best;
  best.energy = kInf;
  for (int s = 0; s < starts; ++s) {
    Rng rng(split_seed(opts.seed, static_cast<std::uint64_t>(s)));
    OptimizerOptions local = opts;
    local.seed = split_seed(opts.seed, 1000 + static_cast<std::uint64_t>(s));

    auto polish = [&](int layers, std::vector<double> x0, int budget) {
      for (double& v : x0) v += rng.uniform(-0.02, 0.02);
      OptimizerOptions stage_opts = local;
      stage_opts.max_evals = budget;
      const Objective f = [&](std::span<const double> v) {
        return eval.energy(layers, v);
      };
      return minimize(f, x0, stage_opts);
    };

    const auto& seed_cand =
        first_layer[std::min<std::size_t>(static_cast<std::size_t>(s),
                                          first_layer.size() - 1)];
    std::vector<double> betas{seed_cand.beta};
    std::vector<double> gammas{seed_cand.gamma};
    double incumbent = seed_cand.energy;
    bool converged = false;

    {
      const MinimizeResult r = polish(1, {betas[0], gammas[0]}, opts.max_evals);
      if (r.f <= incumbent) {
        incumbent = r.f;
        betas = {r.x[0]};
        gammas = {r.x[1]};
      }
      converged = r.converged;
    }

    for (int layers = 2; layers <= p; ++layers) {
      const int budget = opts.max_evals;

      // three ways to extend the schedule by one layer: a fresh scanned
      // layer, a ramp re-spread of the current schedule, and an identity
      // layer (which keeps the incumbent as a floor)
      struct Seed {
        double energy;
        std::vector<double> b, g;
      };
      std::vector<Seed> seeds;

      const auto scan =
          scan_append(eval.state_for(betas, gammas), 1).front();
      Seed append{scan.energy, betas, gammas};
      append.b.push_back(scan.beta);
      append.g.push_back(scan.gamma);
      seeds.push_back(std::move(append));

      Seed ramp{0.0, betas, gammas};
      interp_extend(ramp.b);
      interp_extend(ramp.g);
      {
        std::vector<double> x(ramp.b);
        x.insert(x.end(), ramp.g.begin(), ramp.g.end());
        ramp.energy = eval.energy(layers, x);
      }
      seeds.push_back(std::move(ramp));

      Seed identity{incumbent, betas, gammas};
      identity.b.push_back(0.0);
      identity.g.push_back(0.0);
      seeds.push_back(std::move(identity));

      // polish the ramp seed plus the better of the other two; the identity
      // seed's unpolished energy still floors the stage result
      double stage_best = incumbent;
      std::vector<double> best_b = seeds[2].b;
      std::vector<double> best_g = seeds[2].g;
      if (seeds[0].energy < stage_best) {
        stage_best = seeds[0].energy;
        best_b = seeds[0].b;
        best_g = seeds[0].g;
      }
      if (seeds[1].energy < stage_best) {
        stage_best = seeds[1].energy;
        best_b = seeds[1].b;
        best_g = seeds[1].g;
      }

      converged = false;
      const std::size_t other = seeds[0].energy <= seeds[2].energy ? 0 : 2;
      for (const std::size_t k : {std::size_t{1}, other}) {
        std::vector<double> x0(seeds[k].b);
        x0.insert(x0.end(), seeds[k].g.begin(), seeds[k].g.end());
        const MinimizeResult r = polish(layers, x0, budget);
        converged = converged || r.converged;
        if (r.f < stage_best) {
          stage_best = r.f;
          best_b.assign(r.x.begin(), r.x.begin() + layers);
          best_g.assign(r.x.begin() + layers, r.x.end());
        }
      }

      betas = best_b;
      gammas = best_g;
      incumbent = stage_best;
    }

    if (incumbent < best.energy) {
      best.energy = incumbent;
      best.params.assign(betas.begin(), betas.end());
      best.params.insert(best.params.end(), gammas.begin(), gammas.end());
      best.converged = converged;
    }
  }

  best.evals = eval.evals();
  const ParamCircuit final_circuit = build_qaoa_circuit(
      ising, p,
      std::span<const double>(best.params).subspan(0, static_cast<std::size_t>(p)),
      std::span<const double>(best.params).subspan(static_cast<std::size_t>(p)));
  best.bits = simulate(final_circuit, {}).most_probable_bits();
  return best;
}

double parameter_shift_gradient(const Objective& f,
                                std::span<const double> theta, int index) {
  if (index < 0 || static_cast<std::size_t>(index) >= theta.size()) {
    throw std::invalid_argument("parameter index out of range");
  }
  std::vector<double> shifted(theta.begin(), theta.end());
  shifted[static_cast<std::size_t>(index)] += std::numbers::pi / 2.0;
  const double plus = f(shifted);
  shifted[static_cast<std::size_t>(index)] -= std::numbers::pi;
  const double minus = f(shifted);
  return (plus - minus) / 2.0;
}

}  // namespace poqa
