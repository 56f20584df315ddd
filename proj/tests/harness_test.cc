// Copyright 2026 The MONFG Opponent Modelling Authors
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "monfg/errors.h"
#include "monfg/harness.h"

namespace monfg {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("monfg_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> ReadCsv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

ExperimentConfig Small(Algorithm a1, Algorithm a2, int game = 2) {
  ExperimentConfig c;
  c.game = std::to_string(game);
  c.agent1 = LearnerConfig::Defaults(a1);
  c.agent2 = LearnerConfig::Defaults(a2);
  c.episodes = 20;
  c.trials = 2;
  c.seed = 4;
  return c;
}

TrialLog Log(const std::vector<std::pair<int, int>>& actions) {
  TrialLog log;
  for (auto [a, b] : actions) {
    log.action1.push_back(a);
    log.action2.push_back(b);
    log.probabilities.insert(log.probabilities.end(), {0.5, 0.5, 0.5, 0.5});
  }
  return log;
}

TEST_CASE("seeds and cadence") {
  CHECK(TrialSeed(0, 3) == 3);
  CHECK(TrialSeed(2, 5) == 2 * 1000003ULL + 5);
  CHECK(InteractionsPerEpisode(Small(Algorithm::kAc, Algorithm::kAc)) == 1);
  CHECK(InteractionsPerEpisode(Small(Algorithm::kAcom, Algorithm::kAc)) == 100);
  CHECK(InteractionsPerEpisode(Small(Algorithm::kAc, Algorithm::kLolam)) == 100);
  CHECK(InteractionsPerEpisode(Small(Algorithm::kMoLola, Algorithm::kMoLola)) ==
        1);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(Small(Algorithm::kMoLola, Algorithm::kAc).Validate(),
                  ConfigError);
  CHECK_THROWS_AS(Small(Algorithm::kLolam, Algorithm::kMoLola).Validate(),
                  ConfigError);
  auto c = Small(Algorithm::kAc, Algorithm::kAc);
  c.episodes = 0;
  CHECK_THROWS_AS(c.Validate(), ConfigError);
  c = Small(Algorithm::kAc, Algorithm::kAc);
  c.window_fraction = 0.0;
  CHECK_THROWS_AS(c.Validate(), ConfigError);
  c = Small(Algorithm::kAc, Algorithm::kAc);
  c.agent2.alpha_q = 2.0;
  CHECK_THROWS_AS(c.Validate(), ConfigError);
  CHECK_THROWS(ResolveGame("9"));
  CHECK_THROWS(ResolveGame("/nonexistent/game.txt"));
  CHECK(ResolveGame("3").num_actions(0) == 3);
}

TEST_CASE("outcome distribution windows") {
  const auto g = GameCatalogue(1);
  std::vector<std::pair<int, int>> lm(10, {0, 1});
  auto d = ComputeOutcomeDistribution(g, {Log(lm)}, 0.1);
  CHECK(d.At(0, 1) == 1.0);
  CHECK(d.first_episode == 9);
  CHECK(d.last_episode == 9);

  std::vector<std::pair<int, int>> alt;
  for (int i = 0; i < 10; ++i) alt.push_back(i % 2 ? std::pair{1, 1} : std::pair{0, 0});
  d = ComputeOutcomeDistribution(g, {Log(alt)}, 0.2);
  CHECK(d.At(0, 0) == 0.5);
  CHECK(d.At(1, 1) == 0.5);

  std::vector<std::pair<int, int>> mixed = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  d = ComputeOutcomeDistribution(g, {Log(mixed)}, 1.0);
  for (double f : d.frequencies) CHECK(f == 0.25);
  CHECK(d.first_episode == 0);

  // ceil(0.1 * 15) = 2 episodes.
  std::vector<std::pair<int, int>> fifteen(13, {0, 0});
  fifteen.push_back({1, 1});
  fifteen.push_back({1, 0});
  d = ComputeOutcomeDistribution(g, {Log(fifteen)}, 0.1);
  CHECK(d.At(1, 1) == 0.5);
  CHECK(d.At(1, 0) == 0.5);

  CHECK_THROWS_AS(ComputeOutcomeDistribution(g, {}, 0.1), InvalidArgument);
}

TEST_CASE("runs are deterministic") {
  for (auto [a, b] : {std::pair{Algorithm::kAc, Algorithm::kAcom},
                      std::pair{Algorithm::kLolam, Algorithm::kAcolam},
                      std::pair{Algorithm::kMoLola, Algorithm::kMoLola}}) {
    auto c = Small(a, b);
    c.episodes = 8;
    const auto x = RunExperiment(c);
    const auto y = RunExperiment(c);
    for (int t = 0; t < c.trials; ++t) {
      CHECK(x.trials[t].action1 == y.trials[t].action1);
      CHECK(x.trials[t].action2 == y.trials[t].action2);
      CHECK(x.trials[t].probabilities == y.trials[t].probabilities);
    }
    // Trials use distinct streams.
    CHECK(x.trials[0].action1 != x.trials[1].action1);
  }
}

TEST_CASE("emitted files round-trip and are byte-identical across runs") {
  auto c = Small(Algorithm::kAcom, Algorithm::kAc, 3);
  const auto dir1 = TempDir("emit1"), dir2 = TempDir("emit2");
  EmitResults(RunExperiment(c), dir1);
  EmitResults(RunExperiment(c), dir2);
  for (const char* f : {"outcomes.csv", "traces.csv", "summary.json"}) {
    CHECK(Slurp(dir1 / f) == Slurp(dir2 / f));
  }
  CHECK(fs::exists(dir1 / "meta.json"));

  const auto outcomes = ReadCsv(dir1 / "outcomes.csv");
  CHECK(outcomes[0] == std::vector<std::string>{"trial", "episode", "action1",
                                                "action2", "payoff_0",
                                                "payoff_1"});
  const auto summary = nlohmann::json::parse(Slurp(dir1 / "summary.json"));
  const auto rows = summary["outcome"]["rows"].get<std::vector<std::string>>();
  const auto cols = summary["outcome"]["cols"].get<std::vector<std::string>>();
  const int first = summary["outcome"]["first_episode"];
  std::map<std::pair<std::string, std::string>, double> counts;
  double total = 0;
  const auto game = GameCatalogue(3);
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    const auto& r = outcomes[i];
    // Payoff columns agree with the game.
    const auto a1 = std::find(rows.begin(), rows.end(), r[2]) - rows.begin();
    const auto a2 = std::find(cols.begin(), cols.end(), r[3]) - cols.begin();
    CHECK(std::stod(r[4]) == game.Payoff(0, a1, a2)[0]);
    CHECK(std::stod(r[5]) == game.Payoff(0, a1, a2)[1]);
    if (std::stoi(r[1]) >= first) {
      counts[{r[2], r[3]}] += 1;
      total += 1;
    }
  }
  double sum = 0;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      const double m = summary["outcome"]["matrix"][a][b];
      sum += m;
      CHECK(std::abs(counts[{rows[a], cols[b]}] / total - m) <= 1e-9);
    }
  }
  CHECK(std::abs(sum - 1.0) <= 1e-9);

  std::map<std::tuple<std::string, std::string, std::string>, double> mass;
  const auto traces = ReadCsv(dir1 / "traces.csv");
  CHECK(traces[0] == std::vector<std::string>{"trial", "episode", "agent",
                                              "action", "probability"});
  for (std::size_t i = 1; i < traces.size(); ++i) {
    mass[{traces[i][0], traces[i][1], traces[i][2]}] += std::stod(traces[i][4]);
  }
  CHECK(mass.size() == static_cast<std::size_t>(2 * c.trials * c.episodes));
  for (const auto& [k, v] : mass) CHECK(std::abs(v - 1.0) <= 1e-6);

  CHECK(summary["equilibrium"]["pure_ne"].size() == 3);
  CHECK(summary["config"]["agent1"]["algorithm"] == "acom");
}

TEST_CASE("sweep writes one directory per matchup") {
  const auto dir = TempDir("sweep");
  const auto cfg = dir / "sweep.kv";
  std::ofstream(cfg) << "game = 1 4\nagent1 = ac acom\nagent2 = ac\n"
                        "episodes = 3\ntrials = 1\nseed = 2\nout = "
                     << (dir / "out").string() << "\n";
  const auto written = RunSweep(cfg);
  CHECK(written.size() == 4);
  for (const auto& d : written) CHECK(fs::exists(d / "summary.json"));

  const auto cfg2 = dir / "lola.kv";
  std::ofstream(cfg2) << "game = 2\nmatchup = lola lola\nmatchup = lola ac\n"
                         "episodes = 2\ntrials = 1\nout = "
                      << (dir / "out2").string() << "\n";
  CHECK(RunSweep(cfg2).size() == 1);
}

}  // namespace
}  // namespace monfg
