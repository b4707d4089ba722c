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

#ifndef PNMGANG_MATRIX_SOLVER_H_
#define PNMGANG_MATRIX_SOLVER_H_

#include "pnmgang/game.h"

namespace pnmgang {

inline constexpr double kSolverTolerance = 1e-8;
inline constexpr double kPivotTolerance = 1e-10;
inline constexpr double kOptimalityTolerance = 1e-9;

struct GameSolution {
  MixedStrategy row_strategy;
  MixedStrategy col_strategy;
  double value;

  StrategyProfile profile() const { return {row_strategy, col_strategy}; }
};

// Maximin / minimax strategies and value of a zero-sum matrix game.
//
// Entries are shifted to be >= 1 and the normalized LP
//   max sum(y)  s.t.  A y <= 1, y >= 0
// is solved with a dense tableau simplex using Bland's rule. y / sum(y) is
// the column strategy; the slack prices of the optimal tableau give the row
// player's x with x / sum(x) its strategy. value = 1 / sum(y) - shift.
GameSolution solve_zero_sum(const PayoffMatrix& u);

}  // namespace pnmgang

#endif  // PNMGANG_MATRIX_SOLVER_H_
