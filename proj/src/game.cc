// Copyright 2026 The pnmgang Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pnmgang/game.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "pnmgang/csv.h"

namespace pnmgang {

PayoffMatrix::PayoffMatrix(std::size_t rows, std::size_t cols,
                           std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) {
    throw std::invalid_argument("payoff matrix needs at least one row and column");
  }
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("payoff matrix entry count does not match shape");
  }
  for (double v : entries_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("payoff matrix entries must be finite");
    }
  }
}

PayoffMatrix PayoffMatrix::from_rows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("payoff matrix has no rows");
  std::size_t cols = rows.front().size();
  std::vector<double> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("ragged payoff matrix");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return PayoffMatrix(rows.size(), cols, std::move(entries));
}

std::vector<double> PayoffMatrix::row(std::size_t i) const {
  auto first = entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
  return std::vector<double>(first, first + static_cast<std::ptrdiff_t>(cols_));
}

std::vector<double> PayoffMatrix::col(std::size_t j) const {
  std::vector<double> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

PayoffMatrix PayoffMatrix::augmented(std::span<const double> new_row,
                                     std::span<const double> new_col) const {
  if (new_row.size() != cols_ + 1 || new_col.size() != rows_) {
    throw std::invalid_argument("augmentation has wrong dimensions");
  }
  std::vector<double> e;
  e.reserve((rows_ + 1) * (cols_ + 1));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) e.push_back((*this)(i, j));
    e.push_back(new_col[i]);
  }
  e.insert(e.end(), new_row.begin(), new_row.end());
  return PayoffMatrix(rows_ + 1, cols_ + 1, std::move(e));
}

PayoffMatrix PayoffMatrix::with_row(std::span<const double> new_row) const {
  if (new_row.size() != cols_) {
    throw std::invalid_argument("new row has wrong length");
  }
  std::vector<double> e = entries_;
  e.insert(e.end(), new_row.begin(), new_row.end());
  return PayoffMatrix(rows_ + 1, cols_, std::move(e));
}

PayoffMatrix PayoffMatrix::with_col(std::span<const double> new_col) const {
  if (new_col.size() != rows_) {
    throw std::invalid_argument("new column has wrong length");
  }
  std::vector<double> e;
  e.reserve(rows_ * (cols_ + 1));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) e.push_back((*this)(i, j));
    e.push_back(new_col[i]);
  }
  return PayoffMatrix(rows_, cols_ + 1, std::move(e));
}

MixedStrategy::MixedStrategy(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("empty mixed strategy");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("mixed strategy has a negative or non-finite entry");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
    throw std::invalid_argument("mixed strategy does not sum to 1 (sum = " +
                                format_double(sum) + ")");
  }
  if (sum != 1.0) {
    for (double& p : probs_) p /= sum;
  }
}

MixedStrategy MixedStrategy::pure(std::size_t n, std::size_t index) {
  if (index >= n) throw std::invalid_argument("pure strategy index out of range");
  std::vector<double> p(n, 0.0);
  p[index] = 1.0;
  return MixedStrategy(std::move(p));
}

MixedStrategy MixedStrategy::uniform(std::size_t n) {
  return MixedStrategy(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

MixedStrategy MixedStrategy::padded(std::size_t n) const {
  if (n < probs_.size()) throw std::invalid_argument("cannot shrink a strategy");
  std::vector<double> p = probs_;
  p.resize(n, 0.0);
  return MixedStrategy(std::move(p));
}

namespace {

void check_dims(const PayoffMatrix& u, const StrategyProfile& profile) {
  if (profile.row.size() != u.rows() || profile.col.size() != u.cols()) {
    throw std::invalid_argument("strategy profile does not match matrix shape");
  }
}

}  // namespace

double expected_payoff(const PayoffMatrix& u, const StrategyProfile& profile) {
  check_dims(u, profile);
  double total = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    if (profile.row[i] == 0.0) continue;
    double acc = 0.0;
    for (std::size_t j = 0; j < u.cols(); ++j) acc += profile.col[j] * u(i, j);
    total += profile.row[i] * acc;
  }
  return total;
}

std::vector<double> pure_payoffs(const PayoffMatrix& u,
                                 const MixedStrategy& opponent, Player player) {
  if (player == Player::kRow) {
    if (opponent.size() != u.cols()) {
      throw std::invalid_argument("opponent strategy does not match column count");
    }
    std::vector<double> out(u.rows(), 0.0);
    for (std::size_t i = 0; i < u.rows(); ++i) {
      for (std::size_t j = 0; j < u.cols(); ++j) out[i] += opponent[j] * u(i, j);
    }
    return out;
  }
  if (opponent.size() != u.rows()) {
    throw std::invalid_argument("opponent strategy does not match row count");
  }
  std::vector<double> out(u.cols(), 0.0);
  for (std::size_t i = 0; i < u.rows(); ++i) {
    if (opponent[i] == 0.0) continue;
    for (std::size_t j = 0; j < u.cols(); ++j) out[j] -= opponent[i] * u(i, j);
  }
  return out;
}

PureResponse best_pure_response(const PayoffMatrix& u,
                                const MixedStrategy& opponent, Player player) {
  std::vector<double> values = pure_payoffs(u, opponent, player);
  auto best = std::max_element(values.begin(), values.end());
  return {static_cast<std::size_t>(best - values.begin()), *best};
}

double epsilon_of_profile(const PayoffMatrix& u,
                          const StrategyProfile& profile) {
  double v = expected_payoff(u, profile);
  double row_gain = best_pure_response(u, profile.col, Player::kRow).value - v;
  double col_gain = best_pure_response(u, profile.row, Player::kCol).value + v;
  return std::max(row_gain, col_gain);
}

PayoffMatrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> r;
    for (const auto& field : split_csv_line(line)) {
      try {
        r.push_back(parse_double(field));
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": not a number: '" + field + "'");
      }
    }
    if (!rows.empty() && r.size() != rows.front().size()) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected " +
                                  std::to_string(rows.front().size()) +
                                  " columns");
    }
    rows.push_back(std::move(r));
  }
  return PayoffMatrix::from_rows(rows);
}

void write_matrix_csv(std::ostream& out, const PayoffMatrix& u) {
  for (std::size_t i = 0; i < u.rows(); ++i) write_csv_row(out, u.row(i));
}

}  // namespace pnmgang
