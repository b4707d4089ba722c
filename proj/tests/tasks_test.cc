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

#include "pnmgang/tasks.h"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "doctest.h"

namespace pnmgang {
namespace {

std::size_t nearest_mode(const GaussianMixtureTask& t, const Eigen::Vector2d& x) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < t.modes.size(); ++k) {
    if ((t.modes[k].mean - x).squaredNorm() < (t.modes[best].mean - x).squaredNorm()) best = k;
  }
  return best;
}

TEST_CASE("task presets") {
  CHECK(task_names().size() == 6);
  for (const auto& n : task_names()) {
    GaussianMixtureTask t = make_task(n, 1);
    CHECK(t.name == n);
    CHECK((t.modes.size() == 9 || t.modes.size() == 16));
    CHECK_NOTHROW(t.validate());
  }
  CHECK_THROWS_AS(make_task("grid10", 0), std::invalid_argument);
}

TEST_CASE("grid9 is the {-1,0,1}^2 lattice") {
  GaussianMixtureTask t = make_task("grid9", 0);
  std::set<std::pair<double, double>> means;
  for (const auto& m : t.modes) {
    means.insert({m.mean(0), m.mean(1)});
    CHECK(m.weight == doctest::Approx(1.0 / 9));
    CHECK(m.cov(0, 0) == doctest::Approx(kModeStddev * kModeStddev));
    CHECK(m.cov(0, 1) == 0.0);
  }
  std::set<std::pair<double, double>> expect;
  for (double x : {-1.0, 0.0, 1.0})
    for (double y : {-1.0, 0.0, 1.0}) expect.insert({x, y});
  CHECK(means == expect);
}

TEST_CASE("annulus16 spacing") {
  GaussianMixtureTask t = make_task("annulus16", 0);
  REQUIRE(t.modes.size() == 16);
  for (std::size_t k = 0; k < 16; ++k) {
    const auto& a = t.modes[k].mean;
    const auto& b = t.modes[(k + 1) % 16].mean;
    CHECK(a.norm() == doctest::Approx(1.0));
    double gap = std::atan2(b(1), b(0)) - std::atan2(a(1), a(0));
    if (gap < 0) gap += 2 * std::numbers::pi;
    CHECK(gap == doctest::Approx(2 * std::numbers::pi / 16).epsilon(1e-12));
  }
}

TEST_CASE("random tasks: eigenvalues at least 0.0025, seed-determined") {
  for (std::uint64_t seed : {0, 1, 2, 3}) {
    GaussianMixtureTask t = make_task("random9", seed);
    for (const auto& m : t.modes) {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m.cov);
      CHECK(es.eigenvalues().minCoeff() >= 0.0025 - 1e-15);
      CHECK(std::abs(m.mean(0)) <= 1.0);
      CHECK(std::abs(m.mean(1)) <= 1.0);
    }
    GaussianMixtureTask again = make_task("random9", seed);
    for (std::size_t k = 0; k < 9; ++k) CHECK(again.modes[k].cov == t.modes[k].cov);
  }
  CHECK(make_task("random9", 0).modes[0].mean != make_task("random9", 1).modes[0].mean);
}

TEST_CASE("sample_real mode counts are multinomial") {
  GaussianMixtureTask t = make_task("grid9", 0);
  const std::size_t n = 10000;
  Matrix x = sample_real(t, n, 5);
  REQUIRE(x.cols() == static_cast<Eigen::Index>(n));
  std::vector<int> counts(9, 0);
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    CHECK(std::isfinite(x(0, i)));
    ++counts[nearest_mode(t, x.col(i))];
  }
  const double p = 1.0 / 9;
  const double sd = std::sqrt(n * p * (1 - p));
  for (int c : counts) CHECK(std::abs(c - n * p) <= 4 * sd);
  CHECK(sample_real(t, 100, 5) == sample_real(t, 100, 5));
  CHECK(sample_real(t, 100, 5) != sample_real(t, 100, 6));
}

TEST_CASE("degenerate single mode concentrates") {
  GaussianMixtureTask t{"one", {{Eigen::Vector2d(0.3, -0.7), 1e-8 * Eigen::Matrix2d::Identity(), 1.0}}};
  Matrix x = sample_real(t, 10000, 1);
  Eigen::Vector2d mean = x.rowwise().mean();
  CHECK((mean - t.modes[0].mean).norm() < 1e-3);
}

TEST_CASE("mode coverage") {
  GaussianMixtureTask t = make_task("grid9", 0);
  Matrix at_means(2, 9 * 10);
  for (int k = 0; k < 9; ++k)
    for (int r = 0; r < 10; ++r) at_means.col(k * 10 + r) = t.modes[k].mean;
  Coverage c = mode_coverage(t, at_means);
  CHECK(c.covered_count == 9);

  Matrix one(2, 50);
  for (int i = 0; i < 50; ++i) one.col(i) = t.modes[4].mean;
  Coverage d = mode_coverage(t, one);
  CHECK(d.covered_count == 1);
  CHECK(d.fractions[4] == 1.0);

  // Within 3 sigma holds with probability 1 - exp(-4.5) > 0.98 per mode.
  for (const auto& name : task_names()) {
    GaussianMixtureTask task = make_task(name, 2);
    Coverage e = mode_coverage(task, sample_real(task, 10000, 3), 3.0);
    CHECK(e.covered_count == task.modes.size());
  }
  CHECK_THROWS_AS(mode_coverage(t, Matrix(2, 0)), std::invalid_argument);
}

TEST_CASE("task CSV round trip and bounds") {
  GaussianMixtureTask t = make_task("random16", 4);
  std::stringstream s;
  write_task_csv(s, t);
  GaussianMixtureTask back = read_task_csv(s, "random16");
  REQUIRE(back.modes.size() == t.modes.size());
  for (std::size_t k = 0; k < t.modes.size(); ++k) {
    CHECK(back.modes[k].mean == t.modes[k].mean);
    CHECK(back.modes[k].cov == t.modes[k].cov);
    CHECK(back.modes[k].weight == t.modes[k].weight);
  }
  BoundingBox b = task_bounds(make_task("grid9", 0));
  CHECK(b.x_min == doctest::Approx(-1.15));
  CHECK(b.y_max == doctest::Approx(1.15));
}

}  // namespace
}  // namespace pnmgang
