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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <vector>

#include "pnmgang/config.h"
#include "pnmgang/experiment.h"
#include "pnmgang/game.h"
#include "pnmgang/matrix_solver.h"
#include "pnmgang/pnm.h"
#include "pnmgang/random.h"
#include "pnmgang/tasks.h"

namespace py = pybind11;
using namespace pnmgang;

namespace {

PayoffMatrix to_matrix(const std::vector<std::vector<double>>& rows) {
  return PayoffMatrix::from_rows(rows);
}

py::dict solution_dict(const GameSolution& s) {
  py::dict d;
  d["value"] = s.value;
  auto row = s.row_strategy.probs();
  auto col = s.col_strategy.probs();
  d["row"] = std::vector<double>(row.begin(), row.end());
  d["col"] = std::vector<double>(col.begin(), col.end());
  return d;
}

py::dict task_dict(const GaussianMixtureTask& t) {
  py::list modes;
  for (const auto& m : t.modes) {
    py::dict d;
    d["mean"] = Eigen::Vector2d(m.mean);
    d["cov"] = Eigen::Matrix2d(m.cov);
    d["weight"] = m.weight;
    modes.append(d);
  }
  py::dict d;
  d["name"] = t.name;
  d["modes"] = modes;
  return d;
}

py::dict run_from_ini(const std::string& text, const std::string& output_dir) {
  std::istringstream in(text);
  ExperimentConfig cfg = config_from_ini(parse_ini(in));
  std::optional<ExperimentResult> res;
  {
    py::gil_scoped_release release;
    res.emplace(run_experiment(cfg, output_dir));
  }
  const ExperimentResult& r = *res;
  std::ostringstream metrics;
  write_metrics_csv(metrics, r);
  py::dict d;
  std::istringstream lines(metrics.str());
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    auto comma = line.find(',');
    d[py::str(line.substr(0, comma))] = py::str(line.substr(comma + 1));
  }
  py::list hist;
  for (const auto& h : r.state.history) {
    py::dict e;
    e["iteration"] = h.iteration;
    e["u_brs_g"] = h.u_brs_g;
    e["u_brs_c"] = h.u_brs_c;
    e["u_brs"] = h.u_brs;
    e["accepted"] = h.accepted;
    e["value"] = h.value;
    hist.append(e);
  }
  d["history"] = hist;
  return d;
}

}  // namespace

PYBIND11_MODULE(_pnmgang, m) {
  m.doc() = "Parallel Nash Memory for generative adversarial network games";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("derive_seed", [](std::uint64_t parent, const std::string& tag,
                          std::optional<std::uint64_t> index) {
    return index ? derive_seed(parent, tag, {*index}) : derive_seed(parent, tag);
  }, py::arg("parent"), py::arg("tag"), py::arg("index") = py::none());

  m.def("solve_zero_sum", [](const std::vector<std::vector<double>>& rows) {
    return solution_dict(solve_zero_sum(to_matrix(rows)));
  }, py::arg("matrix"), "Value and equilibrium strategies of a row-player payoff matrix.");

  m.def("epsilon_of_profile", [](const std::vector<std::vector<double>>& rows,
                                 const std::vector<double>& row,
                                 const std::vector<double>& col) {
    return epsilon_of_profile(to_matrix(rows), {MixedStrategy(row), MixedStrategy(col)});
  }, py::arg("matrix"), py::arg("row"), py::arg("col"));

  m.def("pnm_on_matrix", [](const std::vector<std::vector<double>>& rows, bool fixed,
                            int max_iterations) {
    MatrixPnmConfig cfg;
    cfg.mode = fixed ? PnmMode::kFixedIterations : PnmMode::kDeterministicStop;
    cfg.max_iterations = max_iterations;
    MatrixPnmResult r = pnm_on_matrix(to_matrix(rows), cfg);
    py::dict d = solution_dict(r.solution);
    d["iterations"] = r.iterations();
    d["terminated"] = r.terminated;
    d["row_strategies"] = r.row_strategies;
    d["col_strategies"] = r.col_strategies;
    return d;
  }, py::arg("matrix"), py::arg("fixed_iterations") = false,
     py::arg("max_iterations") = 1000,
     "PNM with exact best-response oracles on a known payoff matrix.");

  m.def("task_names", &task_names);
  m.def("make_task", [](const std::string& name, std::uint64_t seed) {
    return task_dict(make_task(name, seed));
  }, py::arg("name"), py::arg("seed") = 0);

  m.def("sample_real", [](const std::string& name, std::size_t n, std::uint64_t seed,
                          std::uint64_t task_seed) {
    return Matrix(sample_real(make_task(name, task_seed), n, seed));
  }, py::arg("name"), py::arg("n"), py::arg("seed"), py::arg("task_seed") = 0,
     "2 x n array of real data points.");

  m.def("mode_coverage", [](const std::string& name, const Matrix& points,
                            std::uint64_t task_seed, double radius_mult, double threshold) {
    Coverage c = mode_coverage(make_task(name, task_seed), points, radius_mult, threshold);
    return py::make_tuple(c.covered_count, c.fractions);
  }, py::arg("name"), py::arg("points"), py::arg("task_seed") = 0,
     py::arg("radius_mult") = kCoverageRadiusMult, py::arg("threshold") = kCoverageThreshold);

  m.def("resolve_config", [](const std::string& text) {
    std::istringstream in(text);
    return to_ini(config_from_ini(parse_ini(in)));
  }, py::arg("ini_text"), "Fully resolved config text.");

  m.def("run_experiment", &run_from_ini, py::arg("ini_text"),
        py::arg("output_dir") = std::string(),
        "Run an experiment from config text; returns metrics and history.");
}
