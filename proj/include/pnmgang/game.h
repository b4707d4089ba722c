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

#ifndef PNMGANG_GAME_H_
#define PNMGANG_GAME_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace pnmgang {

// Tolerance on the sum of a mixed strategy's probabilities.
inline constexpr double kProbabilitySumTolerance = 1e-9;

// Divergence, non-finite estimates and solver breakdowns.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Player { kRow, kCol };

// Row-player payoffs of a finite two-player zero-sum game. The column player
// receives the negation of every entry. Row-major storage.
class PayoffMatrix {
 public:
  PayoffMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  static PayoffMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  std::span<const double> entries() const { return entries_; }
  std::vector<double> row(std::size_t i) const;
  std::vector<double> col(std::size_t j) const;

  // New matrix with one extra row and one extra column. `new_row` has
  // cols()+1 entries (the last one is the corner), `new_col` has rows().
  PayoffMatrix augmented(std::span<const double> new_row,
                         std::span<const double> new_col) const;
  PayoffMatrix with_row(std::span<const double> new_row) const;
  PayoffMatrix with_col(std::span<const double> new_col) const;

  bool operator==(const PayoffMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

// Probability vector over one player's pure strategies. Construction
// renormalizes inputs whose sum is within kProbabilitySumTolerance of 1 and
// rejects anything else.
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> probs);
  static MixedStrategy pure(std::size_t n, std::size_t index);
  static MixedStrategy uniform(std::size_t n);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  // Copy padded with zero-probability entries up to `n` strategies.
  MixedStrategy padded(std::size_t n) const;

  bool operator==(const MixedStrategy&) const = default;

 private:
  std::vector<double> probs_;
};

struct StrategyProfile {
  MixedStrategy row;
  MixedStrategy col;
};

struct PureResponse {
  std::size_t index;
  double value;
};

// Row player's expected payoff; the column player's is its negation.
double expected_payoff(const PayoffMatrix& u, const StrategyProfile& profile);

// Payoff of every pure strategy of `player` against `opponent`, from that
// player's own perspective.
std::vector<double> pure_payoffs(const PayoffMatrix& u,
                                 const MixedStrategy& opponent, Player player);

// Ties go to the lowest index.
PureResponse best_pure_response(const PayoffMatrix& u,
                                const MixedStrategy& opponent, Player player);

// Largest gain either player can obtain by a unilateral pure deviation.
double epsilon_of_profile(const PayoffMatrix& u,
                          const StrategyProfile& profile);

// Header-free CSV, one line per row strategy.
PayoffMatrix read_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const PayoffMatrix& u);

}  // namespace pnmgang

#endif  // PNMGANG_GAME_H_
