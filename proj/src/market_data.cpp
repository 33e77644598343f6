#include "poqa/market_data.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "poqa/rng.hpp"

namespace poqa {
namespace {

const std::vector<std::string> kBuiltinTickers = {
    "TSLA", "AMZN", "GOOG", "AAPL", "FSLR", "SPWR", "ARRY", "ENPH"};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
      cell.pop_back();
    }
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_price(const std::string& cell, int row, const std::string& col) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value) ||
      value <= 0.0) {
    throw std::invalid_argument("malformed price for " + col + " at row " +
                                std::to_string(row) + ": '" + cell + "'");
  }
  return value;
}

std::string format_price(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

void PriceSeries::validate() const {
  const auto t = static_cast<Eigen::Index>(dates.size());
  const auto n = static_cast<Eigen::Index>(tickers.size());
  if (t < 2) throw std::invalid_argument("insufficient history: need T >= 2");
  if (prices.rows() != t || prices.cols() != n) {
    throw std::invalid_argument("price matrix shape does not match headers");
  }
  for (Eigen::Index r = 0; r < t; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (!(prices(r, c) > 0.0)) {
        throw std::invalid_argument("malformed price: non-positive entry");
      }
    }
  }
  for (std::size_t i = 1; i < dates.size(); ++i) {
    if (!(dates[i - 1] < dates[i])) {
      throw std::invalid_argument("dates not strictly increasing");
    }
  }
}

PriceSeries load_prices(const std::string& path,
                        const std::vector<std::string>& tickers) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open price file: " + path);

  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("insufficient history: empty file");
  }
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "date") {
    throw std::invalid_argument("expected header 'date,TICKER,...' in " +
                                path);
  }
  std::vector<std::string> file_tickers(header.begin() + 1, header.end());

  // map requested tickers to file columns
  std::vector<std::string> selected =
      tickers.empty() ? file_tickers : tickers;
  std::vector<std::size_t> column;
  column.reserve(selected.size());
  for (const auto& name : selected) {
    auto it = std::find(file_tickers.begin(), file_tickers.end(), name);
    if (it == file_tickers.end()) {
      throw std::invalid_argument("unknown ticker: " + name);
    }
    column.push_back(
        static_cast<std::size_t>(it - file_tickers.begin()));
  }

  std::vector<std::string> dates;
  std::vector<std::vector<double>> rows;
  int row_index = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != file_tickers.size() + 1) {
      throw std::invalid_argument("malformed price row " +
                                  std::to_string(row_index) +
                                  ": wrong cell count");
    }
    dates.push_back(cells[0]);
    std::vector<double> row(selected.size());
    for (std::size_t k = 0; k < column.size(); ++k) {
      row[k] = parse_price(cells[column[k] + 1], row_index,
                           selected[k]);
    }
    rows.push_back(std::move(row));
    ++row_index;
  }
  if (rows.size() < 2) {
    throw std::invalid_argument("insufficient history: need at least 2 rows");
  }

  // sort rows by date
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return dates[a] < dates[b];
                   });

  PriceSeries series;
  series.tickers = selected;
  series.prices.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(selected.size()));
  series.dates.reserve(rows.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    series.dates.push_back(dates[order[r]]);
    for (std::size_t c = 0; c < selected.size(); ++c) {
      series.prices(static_cast<Eigen::Index>(r),
                    static_cast<Eigen::Index>(c)) = rows[order[r]][c];
    }
  }
  series.validate();
  return series;
}

Eigen::MatrixXd compute_returns(const PriceSeries& series) {
  series.validate();
  const Eigen::Index t = series.prices.rows();
  const Eigen::Index n = series.prices.cols();
  Eigen::MatrixXd returns(t - 1, n);
  for (Eigen::Index r = 0; r + 1 < t; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      returns(r, c) =
          (series.prices(r + 1, c) - series.prices(r, c)) / series.prices(r, c);
    }
  }
  return returns;
}

AssetStatistics estimate_statistics(const Eigen::MatrixXd& returns) {
  const Eigen::Index t = returns.rows();
  const Eigen::Index n = returns.cols();
  if (t < 2) {
    throw std::invalid_argument("insufficient data for covariance");
  }
  AssetStatistics stats;
  stats.mu = returns.colwise().mean().transpose();
  Eigen::MatrixXd centered = returns.rowwise() - stats.mu.transpose();
  Eigen::MatrixXd cov =
      (centered.transpose() * centered) / static_cast<double>(t - 1);
  stats.sigma = 0.5 * (cov + cov.transpose());
  return stats;
}

PriceSeries generate_synthetic(int n_assets, int n_days, std::uint64_t seed,
                               double drift, double vol) {
  if (n_assets < 1) throw std::invalid_argument("n_assets must be >= 1");
  if (n_days < 2) throw std::invalid_argument("n_days must be >= 2");
  if (vol < 0.0) throw std::invalid_argument("negative volatility");

  using namespace std::chrono;
  PriceSeries series;
  for (int i = 0; i < n_assets; ++i) {
    if (static_cast<std::size_t>(i) < kBuiltinTickers.size()) {
      series.tickers.push_back(kBuiltinTickers[static_cast<std::size_t>(i)]);
    } else {
      series.tickers.push_back("A" + std::to_string(i));
    }
  }

  // consecutive weekdays from 2016-07-01
  sys_days day{year{2016} / July / 1};
  series.dates.reserve(static_cast<std::size_t>(n_days));
  while (series.dates.size() < static_cast<std::size_t>(n_days)) {
    weekday wd{day};
    if (wd != Saturday && wd != Sunday) {
      year_month_day ymd{day};
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u",
                    static_cast<int>(ymd.year()),
                    static_cast<unsigned>(ymd.month()),
                    static_cast<unsigned>(ymd.day()));
      series.dates.emplace_back(buf);
    }
    day += days{1};
  }

  Rng rng(seed);
  series.prices.resize(n_days, n_assets);
  for (int c = 0; c < n_assets; ++c) series.prices(0, c) = 100.0;
  for (int r = 1; r < n_days; ++r) {
    for (int c = 0; c < n_assets; ++c) {
      const double g = rng.normal();
      const double factor = std::max(1.0 + drift + vol * g, 1e-6);
      series.prices(r, c) = series.prices(r - 1, c) * factor;
    }
  }
  series.validate();
  return series;
}

std::string prices_to_csv(const PriceSeries& series) {
  std::string out = "date";
  for (const auto& t : series.tickers) {
    out += ',';
    out += t;
  }
  out += '\n';
  for (Eigen::Index r = 0; r < series.prices.rows(); ++r) {
    out += series.dates[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < series.prices.cols(); ++c) {
      out += ',';
      out += format_price(series.prices(r, c));
    }
    out += '\n';
  }
  return out;
}

void write_prices_csv(const PriceSeries& series, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write price file: " + path);
  out << prices_to_csv(series);
}

}  // namespace poqa
