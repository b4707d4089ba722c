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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pnmgang {
namespace {

// Dense tableau, (m + 1) x (n + m + 1); the last row is the objective.
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t n)
      : m_(m), n_(n), width_(n + m + 1), cells_((m + 1) * width_, 0.0),
        basis_(m) {}

  double& at(std::size_t r, std::size_t c) { return cells_[r * width_ + c]; }
  double rhs(std::size_t r) const { return cells_[r * width_ + width_ - 1]; }
  double& rhs(std::size_t r) { return cells_[r * width_ + width_ - 1]; }
  std::size_t objective_row() const { return m_; }
  std::size_t variables() const { return n_ + m_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c < width_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

 private:
  std::size_t m_, n_, width_;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
};

std::vector<double> normalized(std::vector<double> v) {
  double sum = 0.0;
  for (double& x : v) {
    x = std::max(x, 0.0);
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

}  // namespace

GameSolution solve_zero_sum(const PayoffMatrix& u) {
  const std::size_t m = u.rows();
  const std::size_t n = u.cols();
  if (m == 1 && n == 1) {
    return {MixedStrategy::pure(1, 0), MixedStrategy::pure(1, 0), u(0, 0)};
  }

  double min_entry = *std::min_element(u.entries().begin(), u.entries().end());
  const double shift = 1.0 - min_entry;

  Tableau t(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = u(i, j) + shift;
    t.at(i, n + i) = 1.0;
    t.rhs(i) = 1.0;
    t.basis()[i] = n + i;
  }
  const std::size_t obj = t.objective_row();
  for (std::size_t j = 0; j < n; ++j) t.at(obj, j) = -1.0;

  const std::size_t max_pivots = 100 * (m + n) + 1000;
  std::size_t pivots = 0;
  while (true) {
    // Bland: lowest-index improving column.
    std::size_t entering = t.variables();
    for (std::size_t c = 0; c < t.variables(); ++c) {
      if (t.at(obj, c) < -kOptimalityTolerance) {
        entering = c;
        break;
      }
    }
    if (entering == t.variables()) break;

    std::size_t leaving = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      double a = t.at(r, entering);
      if (a <= kPivotTolerance) continue;
      double ratio = t.rhs(r) / a;
      if (ratio < best_ratio - 1e-15 ||
          (ratio <= best_ratio + 1e-15 && leaving < m &&
           t.basis()[r] < t.basis()[leaving])) {
        best_ratio = std::min(best_ratio, ratio);
        leaving = r;
      }
    }
    if (leaving == m) {
      throw NumericalError("simplex: unbounded program (cannot happen for a shifted game)");
    }
    t.pivot(leaving, entering);
    if (++pivots > max_pivots) {
      throw NumericalError("simplex: pivot limit exceeded");
    }
  }

  std::vector<double> y(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis()[r] < n) y[t.basis()[r]] = t.rhs(r);
  }
  std::vector<double> x(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) x[i] = t.at(obj, n + i);

  double total = t.rhs(obj);
  return {MixedStrategy(normalized(std::move(x))),
          MixedStrategy(normalized(std::move(y))), 1.0 / total - shift};
}

}  // namespace pnmgang
