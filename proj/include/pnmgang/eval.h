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

#ifndef PNMGANG_EVAL_H_
#define PNMGANG_EVAL_H_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pnmgang/game.h"
#include "pnmgang/gang.h"
#include "pnmgang/tasks.h"

namespace pnmgang {

// Fixed-budget adversaries used to probe a candidate solution.
struct AttackConfig {
  Architecture attacker_gen_arch;
  Architecture attacker_clf_arch;
  RbbrConfig rbbr;  // seed ignored; restarts derive their own
  int n_restarts = 3;
  std::size_t eval_samples = 10000;

  void validate() const;
};

struct Exploitability {
  double expl;
  double g_term;  // best u_G(attacker, mu_C) over restarts
  double c_term;  // best u_C(mu_G, attacker) over restarts
  std::size_t attacker_gen_params;
  std::size_t attacker_clf_params;
};

// expl = g_term + c_term. Not floored at zero. Every restart is scored on
// the same evaluation draw, so adding restarts never lowers either term.
Exploitability exploitability(const MixtureStrategy& mu_g,
                              const MixtureStrategy& mu_c, const GangSpec& spec,
                              const AttackConfig& atk, std::uint64_t seed);

// Exact analogue on a matrix game: best pure row payoff against the column
// strategy plus best pure column payoff against the row strategy.
Exploitability matrix_exploitability(const PayoffMatrix& u,
                                     const StrategyProfile& profile);

// sum_k mu_C(k) * C_k(x) for every column x.
Eigen::RowVectorXd mixture_output(const MixtureStrategy& mu_c,
                                  const Matrix& points);

struct GridSpec {
  double x_min = -1.0, x_max = 1.0, y_min = -1.0, y_max = 1.0;
  int nx = 200, ny = 200;

  void validate() const;
  double x(int i) const { return x_min + (x_max - x_min) * i / (nx - 1); }
  double y(int j) const { return y_min + (y_max - y_min) * j / (ny - 1); }
};

// Task bounding box with each side length grown by the fraction `inflate`
// (half on each end) and an nx x ny lattice.
GridSpec default_grid(const GaussianMixtureTask& task, int resolution = 200,
                      double inflate = 0.2);

// values(j, i) is the mixture output at (grid.x(i), grid.y(j)).
Matrix classifier_response_surface(const MixtureStrategy& mu_c,
                                   const GridSpec& grid);

struct IndifferenceStat {
  double mean_output;
  double fraction_in_band;
};

IndifferenceStat indifference_stat(const MixtureStrategy& mu_c,
                                   const GaussianMixtureTask& task,
                                   std::size_t n, std::uint64_t seed,
                                   double band_lo = 0.4, double band_hi = 0.6);

// x,y,value
void write_surface_csv(std::ostream& out, const GridSpec& grid,
                       const Matrix& values);
// x,y,label with label in {real, fake}
void write_scatter_csv(std::ostream& out, const Matrix& real,
                       const Matrix& fake);

struct SurfaceData {
  GridSpec grid;
  Matrix values;
};
SurfaceData read_surface_csv(std::istream& in);

struct ScatterData {
  Matrix real;
  Matrix fake;
};
ScatterData read_scatter_csv(std::istream& in);

// Self-contained SVG: classifier surface as a heatmap with the fixed ramp
//   0.0 -> rgb(215,48,39) (fake), 0.5 -> rgb(247,247,247), 1.0 -> rgb(69,117,180) (real)
// linearly interpolated on each half, real points in black and fake points
// in rgb(0,160,0).
struct Rgb {
  int r, g, b;
};
Rgb surface_color(double value);
std::string render_svg(const SurfaceData& surface, const ScatterData& scatter,
                       const std::string& title = "");

}  // namespace pnmgang

#endif  // PNMGANG_EVAL_H_
