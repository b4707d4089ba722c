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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "tiny_config.h"

namespace {

namespace fs = std::filesystem;

const fs::path kDir = fs::temp_directory_path() / "pnmgang_cli_test";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli(const std::string& args) {
  const std::string cmd = std::string(PNMGANG_CLI) + " " + args + " >" +
                          (kDir / "stdout").string() + " 2>" + (kDir / "stderr").string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(kDir / "stdout"),
          slurp(kDir / "stderr")};
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

TEST_CASE("command line interface") {
  fs::remove_all(kDir);
  fs::create_directories(kDir);
  write(kDir / "tiny.ini", kTinyConfig);

  SUBCASE("run, exploit and plot") {
    const fs::path out = kDir / "run";
    Outcome r = cli("run --config " + (kDir / "tiny.ini").string() + " --output " + out.string());
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("metric,value\n", 0) == 0);
    CHECK(r.out.find("\niterations,2\n") != std::string::npos);
    CHECK(fs::exists(out / "metrics.csv"));
    CHECK(slurp(out / "metrics.csv") == r.out);

    Outcome q = cli("run --quiet --config " + (kDir / "tiny.ini").string() + " --output " +
                    (kDir / "run2").string());
    CHECK(q.code == 0);
    CHECK(q.err.empty());
    CHECK(q.out == r.out);

    Outcome e = cli("exploit " + out.string() + " --restarts 1 --steps 5");
    CHECK(e.code == 0);
    CHECK(e.out.rfind("expl,g_term,c_term,attacker_gen_params,attacker_clf_params\n", 0) == 0);

    Outcome p = cli("plot " + out.string() + " --output " + (kDir / "p.svg").string() +
                    " --title hello");
    CHECK(p.code == 0);
    CHECK(slurp(kDir / "p.svg").find("hello") != std::string::npos);
  }

  SUBCASE("solve-matrix") {
    write(kDir / "m.csv", "1,-1\n-1,1\n");
    Outcome r = cli("solve-matrix " + (kDir / "m.csv").string());
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("value,", 0) == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(std::stod(line.substr(6)) == doctest::Approx(0.0));
    for (const char* who : {"row,", "col,"}) {
      std::getline(lines, line);
      REQUIRE(line.rfind(who, 0) == 0);
      const std::string probs = line.substr(4);
      const auto comma = probs.find(',');
      CHECK(std::stod(probs.substr(0, comma)) == doctest::Approx(0.5));
      CHECK(std::stod(probs.substr(comma + 1)) == doctest::Approx(0.5));
    }
  }

  SUBCASE("input errors exit with 2") {
    write(kDir / "bad.ini", "[task]\nname = grid9\n[pnm]\nitrations = 3\n");
    Outcome r = cli("run --config " + (kDir / "bad.ini").string());
    CHECK(r.code == 2);
    CHECK(r.err.find("pnm.itrations") != std::string::npos);
    CHECK(cli("run --config " + (kDir / "missing.ini").string()).code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("exploit " + (kDir / "nowhere").string()).code == 2);
  }

  SUBCASE("divergence exits with 3") {
    std::string text = kTinyConfig;
    text.replace(text.find("[rbbr_g]\n"), 9, "[rbbr_g]\nlearning_rate = 1e300\n");
    write(kDir / "div.ini", text);
    Outcome r = cli("run --quiet --config " + (kDir / "div.ini").string() + " --output " +
                    (kDir / "div").string());
    CHECK(r.code == 3);
    CHECK(r.err.find("diverged") != std::string::npos);
  }

  fs::remove_all(kDir);
}

}  // namespace
