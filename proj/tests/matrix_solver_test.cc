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

#include "pnmgang/matrix_solver.h"

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.h"

namespace pnmgang {
namespace {

PayoffMatrix from_eigen(const oracle::Mat& a) {
  std::vector<double> e;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) e.push_back(a(i, j));
  return PayoffMatrix(a.rows(), a.cols(), e);
}

oracle::Mat to_eigen(const PayoffMatrix& m) {
  oracle::Mat a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

oracle::Vec vec(const MixedStrategy& s) {
  oracle::Vec v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v(i) = s[i];
  return v;
}

TEST_CASE("matching pennies and rock-paper-scissors") {
  for (auto rows : {std::vector<std::vector<double>>{{1, -1}, {-1, 1}},
                    std::vector<std::vector<double>>{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}}) {
    GameSolution s = solve_zero_sum(PayoffMatrix::from_rows(rows));
    CHECK(std::abs(s.value) < 1e-9);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(s.row_strategy[i] == doctest::Approx(1.0 / rows.size()).epsilon(1e-9));
      CHECK(s.col_strategy[i] == doctest::Approx(1.0 / rows.size()).epsilon(1e-9));
    }
  }
}

TEST_CASE("1x1 game") {
  GameSolution s = solve_zero_sum(PayoffMatrix(1, 1, {-3.25}));
  CHECK(s.value == -3.25);
  CHECK(s.row_strategy[0] == 1.0);
}

TEST_CASE("2x2 without saddle matches the closed form") {
  // [[a, b], [c, d]]: p = (d - c) / (a - b - c + d), v = (ad - bc) / (a - b - c + d)
  const double a = 3, b = 1, c = 0, d = 2;
  GameSolution s = solve_zero_sum(PayoffMatrix::from_rows({{a, b}, {c, d}}));
  const double den = a - b - c + d;
  CHECK(s.value == doctest::Approx((a * d - b * c) / den).epsilon(1e-12));
  CHECK(s.value == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(s.row_strategy[0] == doctest::Approx((d - c) / den).epsilon(1e-12));
  CHECK(s.col_strategy[0] == doctest::Approx((d - b) / den).epsilon(1e-12));
}

TEST_CASE("pure saddle") {
  GameSolution s = solve_zero_sum(PayoffMatrix::from_rows({{2, 3}, {0, 1}}));
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.row_strategy[0] == doctest::Approx(1.0));
  CHECK(s.col_strategy[0] == doctest::Approx(1.0));
}

TEST_CASE("random rectangular games agree with support enumeration") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    const int m = 1 + static_cast<int>(rng() % 6);
    const int n = 1 + static_cast<int>(rng() % 6);
    oracle::Mat a = oracle::random_matrix(m, n, rng, -5.0, 5.0);
    auto ref = oracle::support_enumeration(a);
    REQUIRE(ref.has_value());
    GameSolution s = solve_zero_sum(from_eigen(a));
    CHECK(std::abs(s.value - ref->value) < 1e-8);
    CHECK(oracle::epsilon(a, vec(s.row_strategy), vec(s.col_strategy)) < 1e-8);
  }
}

TEST_CASE("degenerate games still give an equilibrium") {
  std::vector<PayoffMatrix> games = {
      PayoffMatrix(3, 3, std::vector<double>(9, 0.0)),
      PayoffMatrix::from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}}),
      PayoffMatrix::from_rows({{1e6, -1e6}, {-1e6, 1e6}}),
      PayoffMatrix::from_rows({{-7, -7, -7}}),
      PayoffMatrix::from_rows({{2}, {5}, {5}}),
  };
  for (const auto& g : games) {
    GameSolution s = solve_zero_sum(g);
    oracle::Mat a = to_eigen(g);
    CHECK(oracle::epsilon(a, vec(s.row_strategy), vec(s.col_strategy)) <=
          1e-8 * std::max(1.0, a.cwiseAbs().maxCoeff()));
    CHECK(std::abs(s.value - expected_payoff(g, s.profile())) < 1e-8 *
          std::max(1.0, a.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("integer games with many ties") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const int m = 1 + static_cast<int>(rng() % 7);
    const int n = 1 + static_cast<int>(rng() % 7);
    oracle::Mat a(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = static_cast<double>(rng() % 3) - 1.0;
    GameSolution s = solve_zero_sum(from_eigen(a));
    CHECK(oracle::epsilon(a, vec(s.row_strategy), vec(s.col_strategy)) < 1e-9);
  }
}

}  // namespace
}  // namespace pnmgang
