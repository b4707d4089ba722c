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

#ifndef PNMGANG_TASKS_H_
#define PNMGANG_TASKS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pnmgang/neural.h"

namespace pnmgang {

// Defaults for the synthetic benchmarks.
inline constexpr double kModeStddev = 0.05;
inline constexpr double kTaskExtent = 1.0;  // means live in [-1, 1]^2
inline constexpr double kCoverageRadiusMult = 3.0;
inline constexpr double kCoverageThreshold = 0.01;

struct GaussianMode {
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;
  double weight;
};

struct GaussianMixtureTask {
  std::string name;
  std::vector<GaussianMode> modes;

  void validate() const;
};

// grid9, grid16, annulus9, annulus16, random9, random16.
std::vector<std::string> task_names();
GaussianMixtureTask make_task(std::string_view name, std::uint64_t seed);

// 2 x n matrix of draws from the mixture.
Matrix sample_real(const GaussianMixtureTask& task, std::size_t n,
                   std::uint64_t seed);

struct Coverage {
  std::size_t covered_count;
  std::vector<double> fractions;
};

// A mode is covered when at least `threshold` of the points lie within
// radius_mult * sqrt(largest covariance eigenvalue) of its mean.
Coverage mode_coverage(const GaussianMixtureTask& task, const Matrix& points,
                       double radius_mult = kCoverageRadiusMult,
                       double threshold = kCoverageThreshold);

struct BoundingBox {
  double x_min, x_max, y_min, y_max;
};

// Axis-aligned box around every mode's 3-sigma ellipse.
BoundingBox task_bounds(const GaussianMixtureTask& task);

// CSV header: mode,weight,mean_x,mean_y,cov_xx,cov_xy,cov_yy
void write_task_csv(std::ostream& out, const GaussianMixtureTask& task);
GaussianMixtureTask read_task_csv(std::istream& in, std::string name);

}  // namespace pnmgang

#endif  // PNMGANG_TASKS_H_
