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

#include "pnmgang/eval.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pnmgang/csv.h"
#include "pnmgang/random.h"

namespace pnmgang {

void AttackConfig::validate() const {
  attacker_gen_arch.validate();
  attacker_clf_arch.validate();
  rbbr.validate();
  if (n_restarts < 1) throw std::invalid_argument("n_restarts must be >= 1");
  if (eval_samples == 0) throw std::invalid_argument("eval_samples must be >= 1");
}

Exploitability exploitability(const MixtureStrategy& mu_g,
                              const MixtureStrategy& mu_c, const GangSpec& spec,
                              const AttackConfig& atk, std::uint64_t seed) {
  atk.validate();
  GangSpec attacker = spec;
  attacker.gen_arch = atk.attacker_gen_arch;
  attacker.clf_arch = atk.attacker_clf_arch;
  attacker.validate();

  const std::uint64_t eval_seed = derive_seed(seed, "attack/eval");
  double g_term = -std::numeric_limits<double>::infinity();
  double c_term = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < atk.n_restarts; ++r) {
    const auto ri = static_cast<std::uint64_t>(r);
    RbbrConfig cfg = atk.rbbr;
    cfg.seed = derive_seed(seed, "attack/g", {ri});
    MlpNet g = rbbr_generator(mu_c, attacker, cfg);
    g_term = std::max(g_term, payoff_ug_vs_mixture(g, mu_c, spec,
                                                   atk.eval_samples, eval_seed));
    cfg.seed = derive_seed(seed, "attack/c", {ri});
    MlpNet c = rbbr_classifier(mu_g, attacker, cfg);
    c_term = std::max(c_term, payoff_uc(mu_g, c, spec, atk.eval_samples, eval_seed));
  }
  return {g_term + c_term, g_term, c_term, param_count(atk.attacker_gen_arch),
          param_count(atk.attacker_clf_arch)};
}

Exploitability matrix_exploitability(const PayoffMatrix& u,
                                     const StrategyProfile& profile) {
  double g = best_pure_response(u, profile.col, Player::kRow).value;
  double c = best_pure_response(u, profile.row, Player::kCol).value;
  return {g + c, g, c, 0, 0};
}

Eigen::RowVectorXd mixture_output(const MixtureStrategy& mu_c,
                                  const Matrix& points) {
  mu_c.validate();
  Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(points.cols());
  for (std::size_t k = 0; k < mu_c.components.size(); ++k) {
    if (mu_c.weights[k] == 0.0) continue;
    out += mu_c.weights[k] * forward_batch(mu_c.components[k], points).row(0);
  }
  return out;
}

void GridSpec::validate() const {
  if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2x2 points");
  if (!(x_max > x_min) || !(y_max > y_min)) {
    throw std::invalid_argument("grid bounds are empty");
  }
}

GridSpec default_grid(const GaussianMixtureTask& task, int resolution,
                      double inflate) {
  BoundingBox b = task_bounds(task);
  double dx = (b.x_max - b.x_min) * inflate / 2.0;
  double dy = (b.y_max - b.y_min) * inflate / 2.0;
  return {b.x_min - dx, b.x_max + dx, b.y_min - dy, b.y_max + dy, resolution,
          resolution};
}

Matrix classifier_response_surface(const MixtureStrategy& mu_c,
                                   const GridSpec& grid) {
  grid.validate();
  Matrix pts(2, static_cast<Eigen::Index>(grid.nx) * grid.ny);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      Eigen::Index k = static_cast<Eigen::Index>(j) * grid.nx + i;
      pts(0, k) = grid.x(i);
      pts(1, k) = grid.y(j);
    }
  }
  Eigen::RowVectorXd out = mixture_output(mu_c, pts);
  Matrix values(grid.ny, grid.nx);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      values(j, i) = std::clamp(out(static_cast<Eigen::Index>(j) * grid.nx + i), 0.0, 1.0);
    }
  }
  return values;
}

IndifferenceStat indifference_stat(const MixtureStrategy& mu_c,
                                   const GaussianMixtureTask& task,
                                   std::size_t n, std::uint64_t seed,
                                   double band_lo, double band_hi) {
  if (n == 0) throw std::invalid_argument("indifference_stat needs n >= 1");
  Matrix real = sample_real(task, n, seed);
  Eigen::RowVectorXd out = mixture_output(mu_c, real);
  std::size_t in_band = 0;
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    if (out(j) >= band_lo && out(j) <= band_hi) ++in_band;
  }
  return {out.mean(), static_cast<double>(in_band) / static_cast<double>(n)};
}

void write_surface_csv(std::ostream& out, const GridSpec& grid,
                       const Matrix& values) {
  out << "x,y,value\n";
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      write_csv_row(out, std::vector<double>{grid.x(i), grid.y(j), values(j, i)});
    }
  }
}

void write_scatter_csv(std::ostream& out, const Matrix& real,
                       const Matrix& fake) {
  out << "x,y,label\n";
  for (Eigen::Index k = 0; k < real.cols(); ++k) {
    out << format_double(real(0, k)) << ',' << format_double(real(1, k)) << ",real\n";
  }
  for (Eigen::Index k = 0; k < fake.cols(); ++k) {
    out << format_double(fake(0, k)) << ',' << format_double(fake(1, k)) << ",fake\n";
  }
}

SurfaceData read_surface_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty surface CSV");
  std::vector<double> xs, ys, vs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 3) throw std::invalid_argument("surface CSV rows need 3 fields");
    xs.push_back(parse_double(f[0]));
    ys.push_back(parse_double(f[1]));
    vs.push_back(parse_double(f[2]));
  }
  if (xs.empty()) throw std::invalid_argument("surface CSV has no data");
  std::size_t nx = 1;
  while (nx < ys.size() && ys[nx] == ys[0]) ++nx;
  if (nx < 2 || xs.size() % nx != 0 || xs.size() / nx < 2) {
    throw std::invalid_argument("surface CSV is not a full lattice");
  }
  std::size_t ny = xs.size() / nx;
  SurfaceData s;
  s.grid = {xs.front(), xs[nx - 1], ys.front(), ys.back(), static_cast<int>(nx),
            static_cast<int>(ny)};
  s.values.resize(static_cast<Eigen::Index>(ny), static_cast<Eigen::Index>(nx));
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      s.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = vs[j * nx + i];
    }
  }
  s.grid.validate();
  return s;
}

ScatterData read_scatter_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty scatter CSV");
  std::vector<Eigen::Vector2d> real, fake;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 3) throw std::invalid_argument("scatter CSV rows need 3 fields");
    Eigen::Vector2d p(parse_double(f[0]), parse_double(f[1]));
    std::string label = f[2];
    if (!label.empty() && label.back() == '\r') label.pop_back();
    if (label == "real") {
      real.push_back(p);
    } else if (label == "fake") {
      fake.push_back(p);
    } else {
      throw std::invalid_argument("scatter label must be real or fake");
    }
  }
  auto to_matrix = [](const std::vector<Eigen::Vector2d>& v) {
    Matrix m(2, static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = v[k];
    return m;
  };
  return {to_matrix(real), to_matrix(fake)};
}

Rgb surface_color(double value) {
  constexpr Rgb kFake{215, 48, 39};
  constexpr Rgb kMid{247, 247, 247};
  constexpr Rgb kReal{69, 117, 180};
  double v = std::clamp(value, 0.0, 1.0);
  auto lerp = [](Rgb a, Rgb b, double t) {
    auto ch = [t](int x, int y) {
      return static_cast<int>(std::lround(x + (y - x) * t));
    };
    return Rgb{ch(a.r, b.r), ch(a.g, b.g), ch(a.b, b.b)};
  };
  return v < 0.5 ? lerp(kFake, kMid, v / 0.5) : lerp(kMid, kReal, (v - 0.5) / 0.5);
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const SurfaceData& surface, const ScatterData& scatter,
                       const std::string& title) {
  const GridSpec& g = surface.grid;
  constexpr double kSize = 600.0;
  constexpr double kMargin = 30.0;
  const double sx = kSize / (g.x_max - g.x_min);
  const double sy = kSize / (g.y_max - g.y_min);
  auto px = [&](double x) { return kMargin + (x - g.x_min) * sx; };
  auto py = [&](double y) { return kMargin + (g.y_max - y) * sy; };
  const double cw = kSize / g.nx;
  const double ch = kSize / g.ny;

  std::ostringstream out;
  out.precision(6);
  const double total = kSize + 2 * kMargin;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total
      << "\" height=\"" << total << "\" viewBox=\"0 0 " << total << ' ' << total
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<g shape-rendering=\"crispEdges\">\n";
  // Horizontal runs of identical color become one rect.
  for (int j = 0; j < g.ny; ++j) {
    double top = kMargin + (g.ny - 1 - j) * ch;
    int i = 0;
    while (i < g.nx) {
      Rgb c = surface_color(surface.values(j, i));
      int k = i + 1;
      while (k < g.nx) {
        Rgb d = surface_color(surface.values(j, k));
        if (d.r != c.r || d.g != c.g || d.b != c.b) break;
        ++k;
      }
      out << "<rect x=\"" << kMargin + i * cw << "\" y=\"" << top << "\" width=\""
          << (k - i) * cw + 0.5 << "\" height=\"" << ch + 0.5 << "\" fill=\"rgb("
          << c.r << ',' << c.g << ',' << c.b << ")\"/>\n";
      i = k;
    }
  }
  out << "</g>\n<g>\n";
  auto dots = [&](const Matrix& pts, const char* fill) {
    for (Eigen::Index k = 0; k < pts.cols(); ++k) {
      double x = pts(0, k), y = pts(1, k);
      if (x < g.x_min || x > g.x_max || y < g.y_min || y > g.y_max) continue;
      out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"1.6\" fill=\""
          << fill << "\"/>\n";
    }
  };
  dots(scatter.real, "black");
  dots(scatter.fake, "rgb(0,160,0)");
  out << "</g>\n";
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kSize
      << "\" height=\"" << kSize << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!title.empty()) {
    out << "<text x=\"" << kMargin << "\" y=\"" << kMargin - 10
        << "\" font-family=\"sans-serif\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace pnmgang
