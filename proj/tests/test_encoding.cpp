#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "oracles.hpp"
#include "poqa/encoding.hpp"
#include "poqa/rng.hpp"

using namespace poqa;

namespace {

AssetStatistics two_asset_stats() {
  AssetStatistics stats;
  stats.mu = Eigen::Vector2d(0.1, 0.2);
  stats.sigma = 0.01 * Eigen::Matrix2d::Identity();
  return stats;
}

Qubo random_qubo(Rng& rng, int n, double scale = 1.0) {
  Qubo qubo;
  qubo.n = n;
  qubo.quad = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      qubo.quad(i, j) = rng.uniform(-scale, scale);
    }
  }
  qubo.offset = rng.uniform(-scale, scale);
  return qubo;
}

AssetStatistics random_psd_stats(Rng& rng, int n) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-0.1, 0.1);
  }
  AssetStatistics stats;
  stats.sigma = a * a.transpose();  // PSD by construction
  stats.mu.resize(n);
  for (int i = 0; i < n; ++i) stats.mu(i) = rng.uniform(-0.05, 0.05);
  return stats;
}

}  // namespace

TEST_CASE("bit conventions: display string lists asset 0 first") {
  CHECK(index_to_bits(0, 3) == "000");
  CHECK(index_to_bits(1, 3) == "100");
  CHECK(index_to_bits(2, 3) == "010");
  CHECK(index_to_bits(6, 3) == "011");
  CHECK(bits_to_index("100") == 1);
  CHECK(bits_to_index("011") == 6);
  CHECK_THROWS_AS(bits_to_index("01x"), std::invalid_argument);
}

TEST_CASE("two-asset objective enumerates to the known energies") {
  const auto [problem, qubo] = build_portfolio_qubo(two_asset_stats(), 0.5, 1, 1.0);
  CHECK(evaluate_bitstring(qubo, "00") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(evaluate_bitstring(qubo, "10") ==
        doctest::Approx(-0.095).epsilon(1e-12));
  CHECK(evaluate_bitstring(qubo, "01") ==
        doctest::Approx(-0.195).epsilon(1e-12));
  CHECK(evaluate_bitstring(qubo, "11") ==
        doctest::Approx(0.71).epsilon(1e-12));

  // the un-expanded objective agrees bitstring by bitstring
  for (std::uint64_t k = 0; k < 4; ++k) {
    const double direct = oracles::portfolio_objective(
        problem.mu, problem.sigma, 0.5, 1, 1.0, k);
    CHECK(evaluate_index(qubo, k) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("with zero data only the penalty remains") {
  AssetStatistics stats;
  stats.mu = Eigen::VectorXd::Zero(3);
  stats.sigma = Eigen::MatrixXd::Zero(3, 3);
  const auto [problem, qubo] = build_portfolio_qubo(stats, 0.7, 0, 1.0);
  for (std::uint64_t k = 0; k < 8; ++k) {
    const double ones = static_cast<double>(std::popcount(k));
    CHECK(evaluate_index(qubo, k) ==
          doctest::Approx(ones * ones).epsilon(1e-12));
  }
  const GroundState ground = exact_ground_state(qubo);
  CHECK(ground.bits == "000");
  CHECK(ground.energy == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("risk zero removes sigma from the encoding") {
  AssetStatistics stats = two_asset_stats();
  const auto [p1, qubo1] = build_portfolio_qubo(stats, 0.0, 1, 1.0);
  stats.sigma *= 137.0;  // any sigma
  const auto [p2, qubo2] = build_portfolio_qubo(stats, 0.0, 1, 1.0);
  CHECK((qubo1.quad - qubo2.quad).cwiseAbs().maxCoeff() == 0.0);
  CHECK(qubo1.quad(0, 1) == 2.0);  // penalty cross term only
}

TEST_CASE("default penalty dominates the unpenalized range") {
  const AssetStatistics stats = two_asset_stats();
  const double expected =
      2.0 * (0.5 * stats.sigma.array().abs().sum() +
             stats.mu.array().abs().sum()) +
      1.0;
  CHECK(default_penalty(stats, 0.5) == doctest::Approx(expected));
  const auto [problem, qubo] = build_portfolio_qubo(stats, 0.5, 1);
  CHECK(problem.penalty_lambda == doctest::Approx(expected));
}

TEST_CASE("encoding rejects bad budgets and shapes") {
  const AssetStatistics stats = two_asset_stats();
  CHECK_THROWS_WITH_AS(build_portfolio_qubo(stats, 0.5, 3),
                       "infeasible budget: B must be in [0, n]",
                       std::invalid_argument);
  CHECK_THROWS_AS(build_portfolio_qubo(stats, 0.5, -1), std::invalid_argument);
  AssetStatistics bad = stats;
  bad.sigma = Eigen::MatrixXd::Zero(3, 3);
  CHECK_THROWS_AS(build_portfolio_qubo(bad, 0.5, 1), std::invalid_argument);
}

TEST_CASE("all-zero bits evaluate to the offset") {
  Rng rng(3);
  const Qubo qubo = random_qubo(rng, 5);
  CHECK(evaluate_bitstring(qubo, "00000") == qubo.offset);
}

TEST_CASE("evaluation agrees with the naive double loop") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Qubo qubo = random_qubo(rng, 6);
    const std::uint64_t state = rng.next_u64() & 63;
    CHECK(evaluate_index(qubo, state) ==
          doctest::Approx(oracles::naive_qubo_energy(qubo, state))
              .epsilon(1e-12));
  }
}

TEST_CASE("bitstring length must match") {
  Rng rng(5);
  const Qubo qubo = random_qubo(rng, 4);
  CHECK_THROWS_AS(evaluate_bitstring(qubo, "001"), std::invalid_argument);
}

TEST_CASE("a single linear term maps to field plus offset shift") {
  Qubo qubo;
  qubo.n = 2;
  qubo.quad = Eigen::MatrixXd::Zero(2, 2);
  qubo.quad(0, 0) = 3.0;
  const IsingHamiltonian ising = qubo_to_ising(qubo);
  CHECK(ising.h(0) == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(ising.h(1) == 0.0);
  CHECK(ising.offset == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(ising.j(0, 1) == 0.0);
}

TEST_CASE("zero qubo maps to zero hamiltonian") {
  Qubo qubo;
  qubo.n = 3;
  qubo.quad = Eigen::MatrixXd::Zero(3, 3);
  const IsingHamiltonian ising = qubo_to_ising(qubo);
  CHECK(ising.h.cwiseAbs().maxCoeff() == 0.0);
  CHECK(ising.j.cwiseAbs().maxCoeff() == 0.0);
  CHECK(ising.offset == 0.0);
}

TEST_CASE("spin and binary energies agree on every bitstring") {
  Rng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 9);  // up to 10
    const Qubo qubo = random_qubo(rng, n);
    const IsingHamiltonian ising = qubo_to_ising(qubo);
    for (std::uint64_t k = 0; k < (1ULL << n); ++k) {
      CHECK(ising_energy_index(ising, k) ==
            doctest::Approx(evaluate_index(qubo, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("exact solver finds the known two-asset optimum") {
  const auto [problem, qubo] = build_portfolio_qubo(two_asset_stats(), 0.5, 1, 1.0);
  const GroundState ground = exact_ground_state(qubo);
  CHECK(ground.bits == "01");
  CHECK(ground.energy == doctest::Approx(-0.195).epsilon(1e-12));
}

TEST_CASE("exact solver agrees with an independent enumerator") {
  Rng rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_u64() % 5);
    const Qubo qubo = random_qubo(rng, n);
    const GroundState mine = exact_ground_state(qubo);
    const GroundState ref = oracles::enumerate_ground_state(qubo);
    CHECK(mine.bits == ref.bits);
    CHECK(mine.energy == doctest::Approx(ref.energy).epsilon(1e-12));
  }
}

TEST_CASE("ties break toward the lexicographically smallest display string") {
  // E(10) == E(01) == -1; "01" < "10" in display order
  Qubo qubo;
  qubo.n = 2;
  qubo.quad = Eigen::MatrixXd::Zero(2, 2);
  qubo.quad(0, 0) = -1.0;
  qubo.quad(1, 1) = -1.0;
  qubo.quad(0, 1) = 2.0;
  const GroundState ground = exact_ground_state(qubo);
  CHECK(ground.bits == "01");

  Qubo zero;
  zero.n = 4;
  zero.quad = Eigen::MatrixXd::Zero(4, 4);
  CHECK(exact_ground_state(zero).bits == "0000");
}

TEST_CASE("the enumeration guard rejects oversized problems") {
  Qubo qubo;
  qubo.n = 25;
  qubo.quad = Eigen::MatrixXd::Zero(25, 25);
  CHECK_THROWS_WITH_AS(exact_ground_state(qubo),
                       "problem too large for exact solver",
                       std::invalid_argument);
}

TEST_CASE("ground energy is non-decreasing in the risk factor") {
  Rng rng(101);
  for (int trial = 0; trial < 5; ++trial) {
    const AssetStatistics stats = random_psd_stats(rng, 5);
    double previous = -1e300;
    for (int k = 0; k <= 9; ++k) {
      const double q = 0.1 * k;
      const auto [problem, qubo] = build_portfolio_qubo(stats, q, 2);
      const double energy = exact_ground_state(qubo).energy;
      CHECK(energy >= previous - 1e-12);
      previous = energy;
    }
  }
}

TEST_CASE("the default penalty forces the budget at the optimum") {
  Rng rng(202);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_u64() % 3);
    const AssetStatistics stats = random_psd_stats(rng, n);
    const int budget = n / 2;
    const auto [problem, qubo] = build_portfolio_qubo(stats, 0.5, budget);
    const GroundState ground = exact_ground_state(qubo);
    const auto selected =
        std::count(ground.bits.begin(), ground.bits.end(), '1');
    CHECK(selected == budget);
  }
}

TEST_CASE("energy table matches per-index evaluation") {
  Rng rng(11);
  const Qubo qubo = random_qubo(rng, 6);
  const std::vector<double> table = energy_table(qubo);
  REQUIRE(table.size() == 64);
  for (std::uint64_t k = 0; k < 64; ++k) {
    CHECK(table[k] == evaluate_index(qubo, k));
  }
}
