#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace poqa {

// Dated close-price matrix for a set of tickers. Rows are trading days in
// strictly increasing date order, columns follow `tickers`.
struct PriceSeries {
  std::vector<std::string> tickers;
  std::vector<std::string> dates;  // ISO yyyy-mm-dd
  Eigen::MatrixXd prices;          // T x n, strictly positive

  // Throws std::invalid_argument when an invariant is violated
  // (T >= 2, positive prices, column/date consistency).
  void validate() const;
};

struct AssetStatistics {
  Eigen::VectorXd mu;     // expected per-period simple return
  Eigen::MatrixXd sigma;  // sample covariance of per-period returns
};

// Parse a CSV with header `date,TICKER1,...,TICKERn`. When `tickers` is
// non-empty the series is restricted to those columns, in the given order.
PriceSeries load_prices(const std::string& path,
                        const std::vector<std::string>& tickers = {});

// r[t][i] = (p[t+1][i] - p[t][i]) / p[t][i]; result is (T-1) x n.
Eigen::MatrixXd compute_returns(const PriceSeries& series);

// Column means and (T-1)-denominator sample covariance, symmetrized.
AssetStatistics estimate_statistics(const Eigen::MatrixXd& returns);

inline constexpr double kDefaultDrift = 5e-4;
inline constexpr double kDefaultVol = 0.02;

// Geometric random walk p[t+1] = p[t] * (1 + drift + vol * g) with g drawn
// from a seeded generator; a pure function of its arguments. Tickers are the
// built-in asset names (first n of them, synthetic names past the list).
// Dates are consecutive weekdays starting 2016-07-01.
PriceSeries generate_synthetic(int n_assets, int n_days, std::uint64_t seed,
                               double drift = kDefaultDrift,
                               double vol = kDefaultVol);

// CSV emission in the exact format load_prices accepts; prices are written
// with round-trip precision so load(write(s)) == s.
std::string prices_to_csv(const PriceSeries& series);
void write_prices_csv(const PriceSeries& series, const std::string& path);

}  // namespace poqa
