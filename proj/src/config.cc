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

#include "pnmgang/config.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "pnmgang/csv.h"
#include "pnmgang/tasks.h"

namespace pnmgang {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"experiment", {"master_seed", "output_dir", "jobs"}},
      {"task", {"name", "seed"}},
      {"gang", {"latent_dim", "gen_hidden", "clf_hidden", "activation", "phi", "clamp_eps"}},
      {"pnm", {"mode", "iterations", "eval_samples", "rb_ne_tolerance"}},
      {"rbbr_g", {"steps", "batch_size", "optimizer", "learning_rate", "beta1", "beta2",
                  "epsilon"}},
      {"rbbr_c", {"steps", "batch_size", "optimizer", "learning_rate", "beta1", "beta2",
                  "epsilon", "uniform_fake"}},
      {"attack", {"enabled", "gen_hidden", "clf_hidden", "steps", "batch_size",
                  "learning_rate", "restarts", "uniform_fake"}},
      {"eval", {"surface_resolution", "surface_inflate", "coverage_radius_mult",
                "coverage_threshold", "indifference_samples", "scatter_samples"}},
  };
  return keys;
}

// Typed access to one section; every lookup names the full key on error.
class Section {
 public:
  Section(const IniDocument& doc, std::string name) : name_(std::move(name)) {
    auto it = doc.find(name_);
    if (it != doc.end()) values_ = &it->second;
  }

  bool has(const std::string& key) const {
    return values_ != nullptr && values_->count(key) > 0;
  }

  std::string full(const std::string& key) const { return name_ + "." + key; }

  const std::string* raw(const std::string& key) const {
    if (!has(key)) return nullptr;
    return &values_->at(key);
  }

  void get(const std::string& key, std::string& out) const {
    if (auto* v = raw(key)) out = *v;
  }

  template <typename Int>
    requires std::is_integral_v<Int>
  void get(const std::string& key, Int& out) const {
    auto* v = raw(key);
    if (v == nullptr) return;
    Int parsed{};
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), parsed);
    if (v->empty() || ec != std::errc() || ptr != v->data() + v->size()) {
      throw ConfigError(full(key), "expected an integer, got '" + *v + "'");
    }
    out = parsed;
  }

  void get(const std::string& key, double& out) const {
    auto* v = raw(key);
    if (v == nullptr) return;
    try {
      out = parse_double(*v);
    } catch (const std::invalid_argument&) {
      throw ConfigError(full(key), "expected a number, got '" + *v + "'");
    }
  }

  void get_bool(const std::string& key, bool& out) const {
    auto* v = raw(key);
    if (v == nullptr) return;
    if (*v == "true" || *v == "1" || *v == "yes") {
      out = true;
    } else if (*v == "false" || *v == "0" || *v == "no") {
      out = false;
    } else {
      throw ConfigError(full(key), "expected true or false, got '" + *v + "'");
    }
  }

  void get_list(const std::string& key, std::vector<int>& out) const {
    auto* v = raw(key);
    if (v == nullptr) return;
    std::vector<int> parsed;
    if (!trim(*v).empty()) {
      for (const auto& field : split_csv_line(*v)) {
        std::string f = trim(field);
        int x = 0;
        auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), x);
        if (f.empty() || ec != std::errc() || ptr != f.data() + f.size() || x < 1) {
          throw ConfigError(full(key), "expected a list of positive integers, got '" + *v + "'");
        }
        parsed.push_back(x);
      }
    }
    out = std::move(parsed);
  }

 private:
  std::string name_;
  const std::map<std::string, std::string>* values_ = nullptr;
};

void read_rbbr(const Section& s, RbbrConfig& r) {
  s.get("steps", r.steps);
  s.get("batch_size", r.batch_size);
  if (auto* v = s.raw("optimizer")) {
    if (*v == "adam") {
      r.optimizer.kind = OptimizerConfig::Kind::kAdam;
    } else if (*v == "sgd") {
      r.optimizer.kind = OptimizerConfig::Kind::kSgd;
    } else {
      throw ConfigError(s.full("optimizer"), "expected adam or sgd, got '" + *v + "'");
    }
  }
  s.get("learning_rate", r.optimizer.learning_rate);
  s.get("beta1", r.optimizer.beta1);
  s.get("beta2", r.optimizer.beta2);
  s.get("epsilon", r.optimizer.epsilon);
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

void write_rbbr(std::ostream& out, const RbbrConfig& r) {
  out << "steps = " << r.steps << '\n'
      << "batch_size = " << r.batch_size << '\n'
      << "optimizer = "
      << (r.optimizer.kind == OptimizerConfig::Kind::kAdam ? "adam" : "sgd") << '\n'
      << "learning_rate = " << format_double(r.optimizer.learning_rate) << '\n'
      << "beta1 = " << format_double(r.optimizer.beta1) << '\n'
      << "beta2 = " << format_double(r.optimizer.beta2) << '\n'
      << "epsilon = " << format_double(r.optimizer.epsilon) << '\n';
}

}  // namespace

IniDocument parse_ini(std::istream& in) {
  IniDocument doc;
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const std::string where = "line " + std::to_string(line_no);
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("", where + ": unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (known_keys().count(section) == 0) {
        throw ConfigError(section, where + ": unknown section");
      }
      doc[section];
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("", where + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (section.empty()) throw ConfigError(key, where + ": key outside of a section");
    if (known_keys().at(section).count(key) == 0) {
      throw ConfigError(section + "." + key, where + ": unknown key");
    }
    if (!doc[section].emplace(key, value).second) {
      throw ConfigError(section + "." + key, where + ": duplicate key");
    }
  }
  return doc;
}

PnmConfig ExperimentConfig::default_pnm_config() {
  PnmConfig p;
  p.rbbr_c.uniform_fake = true;
  return p;
}

void ExperimentConfig::validate() const {
  if (task_name.empty()) throw ConfigError("task.name", "missing task name");
  bool known = false;
  for (const auto& n : task_names()) known = known || n == task_name;
  if (!known) throw ConfigError("task.name", "unknown task '" + task_name + "'");
  if (latent_dim < 1) throw ConfigError("gang.latent_dim", "must be >= 1");
  if (jobs < 1) throw ConfigError("experiment.jobs", "must be >= 1");
  try {
    phi.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("gang.clamp_eps", e.what());
  }
  auto check_rbbr = [](const RbbrConfig& r, const std::string& sec) {
    if (r.steps < 0) throw ConfigError(sec + ".steps", "must be >= 0");
    if (r.batch_size < 1) throw ConfigError(sec + ".batch_size", "must be >= 1");
    if (!(r.optimizer.learning_rate > 0.0)) {
      throw ConfigError(sec + ".learning_rate", "must be positive");
    }
  };
  check_rbbr(pnm.rbbr_g, "rbbr_g");
  check_rbbr(pnm.rbbr_c, "rbbr_c");
  check_rbbr(attack_rbbr, "attack");
  if (pnm.iterations < 1) throw ConfigError("pnm.iterations", "must be >= 1");
  if (pnm.eval_samples < 1) throw ConfigError("pnm.eval_samples", "must be >= 1");
  if (!(pnm.rb_ne_tolerance >= 0.0)) throw ConfigError("pnm.rb_ne_tolerance", "must be >= 0");
  if (attack_restarts < 1) throw ConfigError("attack.restarts", "must be >= 1");
  if (surface_resolution < 2) throw ConfigError("eval.surface_resolution", "must be >= 2");
  if (indifference_samples < 1) throw ConfigError("eval.indifference_samples", "must be >= 1");
  if (scatter_samples < 1) throw ConfigError("eval.scatter_samples", "must be >= 1");
}

ExperimentConfig config_from_ini(const IniDocument& doc) {
  ExperimentConfig cfg;
  Section exp(doc, "experiment");
  exp.get("master_seed", cfg.master_seed);
  exp.get("output_dir", cfg.output_dir);
  exp.get("jobs", cfg.jobs);

  Section task(doc, "task");
  task.get("name", cfg.task_name);
  task.get("seed", cfg.task_seed);

  Section gang(doc, "gang");
  gang.get("latent_dim", cfg.latent_dim);
  gang.get_list("gen_hidden", cfg.gen_hidden);
  gang.get_list("clf_hidden", cfg.clf_hidden);
  if (auto* v = gang.raw("activation")) {
    try {
      cfg.hidden_activation = parse_activation(*v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("gang.activation", e.what());
    }
  }
  if (auto* v = gang.raw("phi")) {
    if (*v == "log") {
      cfg.phi.kind = MeasuringFn::Kind::kLog;
    } else if (*v == "identity") {
      cfg.phi.kind = MeasuringFn::Kind::kIdentity;
    } else {
      throw ConfigError("gang.phi", "expected log or identity, got '" + *v + "'");
    }
  }
  gang.get("clamp_eps", cfg.phi.clamp_eps);

  Section pnm(doc, "pnm");
  if (auto* v = pnm.raw("mode")) {
    if (*v == "fixed") {
      cfg.pnm.mode = PnmMode::kFixedIterations;
    } else if (*v == "stop") {
      cfg.pnm.mode = PnmMode::kDeterministicStop;
    } else {
      throw ConfigError("pnm.mode", "expected fixed or stop, got '" + *v + "'");
    }
  }
  pnm.get("iterations", cfg.pnm.iterations);
  pnm.get("eval_samples", cfg.pnm.eval_samples);
  pnm.get("rb_ne_tolerance", cfg.pnm.rb_ne_tolerance);

  read_rbbr(Section(doc, "rbbr_g"), cfg.pnm.rbbr_g);
  Section rc(doc, "rbbr_c");
  read_rbbr(rc, cfg.pnm.rbbr_c);
  rc.get_bool("uniform_fake", cfg.pnm.rbbr_c.uniform_fake);

  Section atk(doc, "attack");
  cfg.attack_gen_hidden = cfg.gen_hidden;
  cfg.attack_clf_hidden = cfg.clf_hidden;
  cfg.attack_rbbr.steps = cfg.pnm.rbbr_g.steps;
  atk.get_bool("enabled", cfg.attack_enabled);
  atk.get_list("gen_hidden", cfg.attack_gen_hidden);
  atk.get_list("clf_hidden", cfg.attack_clf_hidden);
  atk.get("steps", cfg.attack_rbbr.steps);
  atk.get("batch_size", cfg.attack_rbbr.batch_size);
  atk.get("learning_rate", cfg.attack_rbbr.optimizer.learning_rate);
  atk.get("restarts", cfg.attack_restarts);
  atk.get_bool("uniform_fake", cfg.attack_rbbr.uniform_fake);

  Section ev(doc, "eval");
  ev.get("surface_resolution", cfg.surface_resolution);
  ev.get("surface_inflate", cfg.surface_inflate);
  ev.get("coverage_radius_mult", cfg.coverage_radius_mult);
  ev.get("coverage_threshold", cfg.coverage_threshold);
  ev.get("indifference_samples", cfg.indifference_samples);
  ev.get("scatter_samples", cfg.scatter_samples);

  cfg.pnm.master_seed = cfg.master_seed;
  cfg.pnm.jobs = cfg.jobs;
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path);
  return config_from_ini(parse_ini(in));
}

void apply_slow_g_preset(ExperimentConfig& cfg) {
  cfg.pnm.rbbr_g.optimizer.learning_rate = 1e-4;
}

std::string to_ini(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "[experiment]\n"
      << "master_seed = " << cfg.master_seed << '\n'
      << "output_dir = \"" << cfg.output_dir << "\"\n"
      << "jobs = " << cfg.jobs << "\n\n";
  out << "[task]\n"
      << "name = " << cfg.task_name << '\n'
      << "seed = " << cfg.task_seed << "\n\n";
  out << "[gang]\n"
      << "latent_dim = " << cfg.latent_dim << '\n'
      << "gen_hidden = " << join(cfg.gen_hidden) << '\n'
      << "clf_hidden = " << join(cfg.clf_hidden) << '\n'
      << "activation = " << activation_name(cfg.hidden_activation) << '\n'
      << "phi = " << (cfg.phi.kind == MeasuringFn::Kind::kLog ? "log" : "identity") << '\n'
      << "clamp_eps = " << format_double(cfg.phi.clamp_eps) << "\n\n";
  out << "[pnm]\n"
      << "mode = " << (cfg.pnm.mode == PnmMode::kFixedIterations ? "fixed" : "stop") << '\n'
      << "iterations = " << cfg.pnm.iterations << '\n'
      << "eval_samples = " << cfg.pnm.eval_samples << '\n'
      << "rb_ne_tolerance = " << format_double(cfg.pnm.rb_ne_tolerance) << "\n\n";
  out << "[rbbr_g]\n";
  write_rbbr(out, cfg.pnm.rbbr_g);
  out << "\n[rbbr_c]\n";
  write_rbbr(out, cfg.pnm.rbbr_c);
  out << "uniform_fake = " << (cfg.pnm.rbbr_c.uniform_fake ? "true" : "false") << "\n\n";
  out << "[attack]\n"
      << "enabled = " << (cfg.attack_enabled ? "true" : "false") << '\n'
      << "gen_hidden = " << join(cfg.attack_gen_hidden) << '\n'
      << "clf_hidden = " << join(cfg.attack_clf_hidden) << '\n'
      << "steps = " << cfg.attack_rbbr.steps << '\n'
      << "batch_size = " << cfg.attack_rbbr.batch_size << '\n'
      << "learning_rate = " << format_double(cfg.attack_rbbr.optimizer.learning_rate) << '\n'
      << "restarts = " << cfg.attack_restarts << '\n'
      << "uniform_fake = " << (cfg.attack_rbbr.uniform_fake ? "true" : "false") << "\n\n";
  out << "[eval]\n"
      << "surface_resolution = " << cfg.surface_resolution << '\n'
      << "surface_inflate = " << format_double(cfg.surface_inflate) << '\n'
      << "coverage_radius_mult = " << format_double(cfg.coverage_radius_mult) << '\n'
      << "coverage_threshold = " << format_double(cfg.coverage_threshold) << '\n'
      << "indifference_samples = " << cfg.indifference_samples << '\n'
      << "scatter_samples = " << cfg.scatter_samples << '\n';
  return out.str();
}

}  // namespace pnmgang
