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

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

namespace pnmgang {
namespace {

PayoffMatrix rps() {
  return PayoffMatrix::from_rows({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}});
}

TEST_CASE("PayoffMatrix validates shape and values") {
  CHECK_THROWS_AS(PayoffMatrix(0, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(PayoffMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(PayoffMatrix(1, 1, {std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(PayoffMatrix::from_rows({{1, 2}, {3}}), std::invalid_argument);
  PayoffMatrix m(2, 3, {1, 2, 3, 4, 5, 6});
  CHECK(m(1, 2) == 6);
  CHECK(m.row(1) == std::vector<double>{4, 5, 6});
  CHECK(m.col(0) == std::vector<double>{1, 4});
}

TEST_CASE("augmentation appends and keeps old entries") {
  PayoffMatrix m(2, 2, {1, 2, 3, 4});
  std::vector<double> row{5, 6, 7};
  std::vector<double> col{8, 9};
  PayoffMatrix a = m.augmented(row, col);
  REQUIRE(a.rows() == 3);
  REQUIRE(a.cols() == 3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(a(i, j) == m(i, j));
  CHECK(a(0, 2) == 8);
  CHECK(a(1, 2) == 9);
  CHECK(a.row(2) == row);
  CHECK(m.with_row(std::vector<double>{0, 1}).rows() == 3);
  CHECK(m.with_col(col).cols() == 3);
  CHECK_THROWS_AS(m.augmented(col, col), std::invalid_argument);
}

TEST_CASE("MixedStrategy enforces the simplex") {
  CHECK_THROWS_AS(MixedStrategy({0.5, -0.1, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(MixedStrategy({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(MixedStrategy({}), std::invalid_argument);
  MixedStrategy s({0.5, 0.5 + 5e-10});
  CHECK(s[0] + s[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(MixedStrategy::pure(3, 1).probs()[1] == 1.0);
  CHECK(MixedStrategy::uniform(4)[3] == 0.25);
  MixedStrategy p = MixedStrategy({0.25, 0.75}).padded(4);
  CHECK(p.size() == 4);
  CHECK(p[1] == 0.75);
  CHECK(p[3] == 0.0);
}

TEST_CASE("payoffs are from each player's own perspective") {
  PayoffMatrix m = PayoffMatrix::from_rows({{3, 1}, {0, 2}});
  MixedStrategy half = MixedStrategy::uniform(2);
  auto row = pure_payoffs(m, half, Player::kRow);
  CHECK(row == std::vector<double>{2.0, 1.0});
  auto col = pure_payoffs(m, half, Player::kCol);
  CHECK(col == std::vector<double>{-1.5, -1.5});
  CHECK(expected_payoff(m, {half, half}) == 1.5);
  // Tie between the two columns goes to index 0.
  CHECK(best_pure_response(m, half, Player::kCol).index == 0);
  CHECK(best_pure_response(m, half, Player::kRow).index == 0);
}

TEST_CASE("epsilon_of_profile") {
  PayoffMatrix m = rps();
  MixedStrategy u = MixedStrategy::uniform(3);
  CHECK(std::abs(epsilon_of_profile(m, {u, u})) < 1e-15);
  MixedStrategy rock = MixedStrategy::pure(3, 0);
  CHECK(epsilon_of_profile(m, {rock, rock}) == 1.0);
}

TEST_CASE("matrix CSV round trip and errors name the line") {
  PayoffMatrix m(2, 3, {0.1, -2, 1.0 / 3.0, 4e-12, 5, 6});
  std::stringstream s;
  write_matrix_csv(s, m);
  CHECK(read_matrix_csv(s) == m);

  std::istringstream bad("1,2\n3,x\n");
  try {
    read_matrix_csv(bad);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(read_matrix_csv(ragged), std::invalid_argument);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_matrix_csv(empty), std::invalid_argument);
}

}  // namespace
}  // namespace pnmgang
