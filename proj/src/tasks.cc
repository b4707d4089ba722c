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
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "pnmgang/csv.h"
#include "pnmgang/random.h"

namespace pnmgang {
namespace {

constexpr double kVariance = kModeStddev * kModeStddev;

GaussianMixtureTask grid(std::string name, int side) {
  GaussianMixtureTask t{std::move(name), {}};
  const double w = 1.0 / (side * side);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      double x = -kTaskExtent + 2.0 * kTaskExtent * c / (side - 1);
      double y = -kTaskExtent + 2.0 * kTaskExtent * r / (side - 1);
      t.modes.push_back({{x, y}, kVariance * Eigen::Matrix2d::Identity(), w});
    }
  }
  return t;
}

GaussianMixtureTask annulus(std::string name, int count) {
  GaussianMixtureTask t{std::move(name), {}};
  for (int k = 0; k < count; ++k) {
    double angle = 2.0 * std::numbers::pi * k / count;
    t.modes.push_back({{kTaskExtent * std::cos(angle), kTaskExtent * std::sin(angle)},
                       kVariance * Eigen::Matrix2d::Identity(),
                       1.0 / count});
  }
  return t;
}

GaussianMixtureTask random_modes(std::string name, int count,
                                 std::uint64_t seed) {
  GaussianMixtureTask t{std::move(name), {}};
  Rng rng = make_rng(derive_seed(seed, "task/random"));
  std::uniform_real_distribution<double> pos(-kTaskExtent, kTaskExtent);
  std::uniform_real_distribution<double> factor(-kModeStddev, kModeStddev);
  for (int k = 0; k < count; ++k) {
    Eigen::Vector2d mean(pos(rng), pos(rng));
    Eigen::Matrix2d a;
    a << factor(rng), factor(rng), factor(rng), factor(rng);
    Eigen::Matrix2d cov = a * a.transpose() + kVariance * Eigen::Matrix2d::Identity();
    t.modes.push_back({mean, cov, 1.0 / count});
  }
  return t;
}

double largest_eigenvalue(const Eigen::Matrix2d& cov) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace

void GaussianMixtureTask::validate() const {
  if (modes.empty()) throw std::invalid_argument("task has no modes");
  double sum = 0.0;
  for (const auto& m : modes) {
    if (!(m.weight >= 0.0)) throw std::invalid_argument("negative mode weight");
    sum += m.weight;
    if (!m.mean.allFinite() || !m.cov.allFinite() ||
        std::abs(m.cov(0, 1) - m.cov(1, 0)) > 1e-12) {
      throw std::invalid_argument("mode covariance must be finite and symmetric");
    }
    if (Eigen::LLT<Eigen::Matrix2d>(m.cov).info() != Eigen::Success) {
      throw std::invalid_argument("mode covariance is not positive definite");
    }
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("mode weights must sum to 1");
  }
}

std::vector<std::string> task_names() {
  return {"grid9", "grid16", "annulus9", "annulus16", "random9", "random16"};
}

GaussianMixtureTask make_task(std::string_view name, std::uint64_t seed) {
  GaussianMixtureTask t;
  if (name == "grid9") {
    t = grid("grid9", 3);
  } else if (name == "grid16") {
    t = grid("grid16", 4);
  } else if (name == "annulus9") {
    t = annulus("annulus9", 9);
  } else if (name == "annulus16") {
    t = annulus("annulus16", 16);
  } else if (name == "random9") {
    t = random_modes("random9", 9, seed);
  } else if (name == "random16") {
    t = random_modes("random16", 16, seed);
  } else {
    throw std::invalid_argument("unknown task '" + std::string(name) + "'");
  }
  t.validate();
  return t;
}

Matrix sample_real(const GaussianMixtureTask& task, std::size_t n,
                   std::uint64_t seed) {
  std::vector<double> weights;
  std::vector<Eigen::Matrix2d> factors;
  for (const auto& m : task.modes) {
    weights.push_back(m.weight);
    Eigen::LLT<Eigen::Matrix2d> llt(m.cov);
    if (llt.info() != Eigen::Success) {
      throw std::invalid_argument("mode covariance is not positive definite");
    }
    factors.push_back(llt.matrixL());
  }
  Rng rng = make_rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix out(2, static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < out.cols(); ++i) {
    std::size_t k = pick(rng);
    Eigen::Vector2d z(normal(rng), normal(rng));
    out.col(i) = task.modes[k].mean + factors[k] * z;
  }
  return out;
}

Coverage mode_coverage(const GaussianMixtureTask& task, const Matrix& points,
                       double radius_mult, double threshold) {
  if (points.cols() == 0) throw std::invalid_argument("no points to score");
  if (points.rows() != 2) throw std::invalid_argument("points must be 2-D");
  Coverage cov{0, {}};
  const double n = static_cast<double>(points.cols());
  for (const auto& m : task.modes) {
    double radius = radius_mult * std::sqrt(largest_eigenvalue(m.cov));
    double r2 = radius * radius;
    std::size_t inside = 0;
    for (Eigen::Index i = 0; i < points.cols(); ++i) {
      if ((points.col(i) - m.mean).squaredNorm() <= r2) ++inside;
    }
    double frac = static_cast<double>(inside) / n;
    cov.fractions.push_back(frac);
    if (frac >= threshold) ++cov.covered_count;
  }
  return cov;
}

BoundingBox task_bounds(const GaussianMixtureTask& task) {
  BoundingBox b{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (const auto& m : task.modes) {
    double rx = 3.0 * std::sqrt(m.cov(0, 0));
    double ry = 3.0 * std::sqrt(m.cov(1, 1));
    b.x_min = std::min(b.x_min, m.mean.x() - rx);
    b.x_max = std::max(b.x_max, m.mean.x() + rx);
    b.y_min = std::min(b.y_min, m.mean.y() - ry);
    b.y_max = std::max(b.y_max, m.mean.y() + ry);
  }
  return b;
}

void write_task_csv(std::ostream& out, const GaussianMixtureTask& task) {
  out << "mode,weight,mean_x,mean_y,cov_xx,cov_xy,cov_yy\n";
  for (std::size_t k = 0; k < task.modes.size(); ++k) {
    const auto& m = task.modes[k];
    out << k << ',';
    write_csv_row(out, std::vector<double>{m.weight, m.mean.x(), m.mean.y(),
                                           m.cov(0, 0), m.cov(0, 1), m.cov(1, 1)});
  }
}

GaussianMixtureTask read_task_csv(std::istream& in, std::string name) {
  GaussianMixtureTask t{std::move(name), {}};
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty task CSV");
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto f = split_csv_line(line);
    if (f.size() != 7) throw std::invalid_argument("task CSV rows need 7 fields");
    GaussianMode m;
    m.weight = parse_double(f[1]);
    m.mean = {parse_double(f[2]), parse_double(f[3])};
    m.cov << parse_double(f[4]), parse_double(f[5]), parse_double(f[5]),
        parse_double(f[6]);
    t.modes.push_back(m);
  }
  t.validate();
  return t;
}

}  // namespace pnmgang
