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

// Command-line front end: run, verify and sweep.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "monfg/equilibrium.h"
#include "monfg/errors.h"
#include "monfg/harness.h"
#include "monfg/learners.h"

namespace {

using monfg::Algorithm;
using monfg::LearnerConfig;

int Run(const std::string& game, const std::string& agent1,
        const std::string& agent2, int lookahead1, int lookahead2,
        int episodes, int trials, std::uint64_t seed, const std::string& out,
        double window) {
  monfg::ExperimentConfig c;
  c.game = game;
  c.agent1 = LearnerConfig::Defaults(monfg::ParseAlgorithm(agent1), lookahead1);
  c.agent2 = LearnerConfig::Defaults(monfg::ParseAlgorithm(agent2), lookahead2);
  c.episodes = episodes;
  c.trials = trials;
  c.seed = seed;
  c.out_dir = out;
  c.window_fraction = window;
  const auto artifacts = monfg::RunExperiment(c);
  monfg::EmitResults(artifacts, out);

  const auto& d = artifacts.outcome;
  const auto& g = artifacts.game;
  std::printf("%s: %s vs %s, last %d episodes of %d trials\n",
              g.name().c_str(), agent1.c_str(), agent2.c_str(),
              d.last_episode - d.first_episode + 1, d.trials);
  for (int a1 = 0; a1 < d.rows; ++a1) {
    for (int a2 = 0; a2 < d.cols; ++a2) {
      std::printf("  (%s,%s) %.4f", g.action_labels(0)[a1].c_str(),
                  g.action_labels(1)[a2].c_str(), d.At(a1, a2));
    }
    std::printf("\n");
  }
  std::printf("wrote %s (%.1f s)\n", out.c_str(), artifacts.wall_seconds);
  return 0;
}

int Verify(const std::string& game_spec, const std::string& out) {
  const monfg::Monfg game = monfg::ResolveGame(game_spec);
  const std::vector<monfg::UtilityFn> u{monfg::RowUtility(),
                                        monfg::ColumnUtility()};
  nlohmann::ordered_json j;
  j["game"] = game.name();
  j["pure_ne"] = nlohmann::ordered_json::array();
  for (int flat = 0; flat < game.num_joint_actions(); ++flat) {
    const auto joint = game.Unflatten(flat);
    const auto profile = monfg::MixedStrategyProfile::Pure(game, joint);
    const auto cert = monfg::VerifyNe(game, profile, u);
    nlohmann::ordered_json e;
    e["joint"] = {game.action_labels(0)[joint[0]],
                  game.action_labels(1)[joint[1]]};
    e["ser"] = {monfg::SerUtility(game, profile, 0, u[0]),
                monfg::SerUtility(game, profile, 1, u[1])};
    e["mixed_deviation_epsilon"] = cert.epsilon;
    e["search_resolution"] = cert.search_resolution;
    j["profiles"].push_back(e);
  }
  for (const auto& joint : monfg::EnumeratePureNe(game, u)) {
    j["pure_ne"].push_back({game.action_labels(0)[joint[0]],
                            game.action_labels(1)[joint[1]]});
  }
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    const auto path = std::filesystem::path(out) / "verify.json";
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) {
      throw std::runtime_error("cannot write " + path.string());
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning in two-player multi-objective normal-form games"};
  app.require_subcommand(1);

  std::string game = "1", agent1 = "ac", agent2 = "ac", out;
  int lookahead1 = 1, lookahead2 = 1, episodes = 3000, trials = 30;
  std::uint64_t seed = 0;
  double window = 0.1;
  auto* run = app.add_subcommand("run", "Run one matchup");
  run->add_option("--game", game, "Catalogue game 1..5 or a game file")
      ->required();
  const std::vector<std::string> names{"ac", "acom", "acolam", "lola", "lolam"};
  run->add_option("--agent1", agent1, "Row learner")
      ->required()
      ->check(CLI::IsMember(names, CLI::ignore_case));
  run->add_option("--agent2", agent2, "Column learner")
      ->required()
      ->check(CLI::IsMember(names, CLI::ignore_case));
  run->add_option("--lookahead1", lookahead1, "Row lookahead")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--lookahead2", lookahead2, "Column lookahead")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--episodes", episodes)->check(CLI::PositiveNumber);
  run->add_option("--trials", trials)->check(CLI::PositiveNumber);
  run->add_option("--seed", seed);
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--window", window, "Fraction of final episodes")
      ->check(CLI::Range(0.0, 1.0));

  std::string verify_game, verify_out;
  auto* verify = app.add_subcommand("verify", "Equilibrium report for a game");
  verify->add_option("--game", verify_game)->required();
  verify->add_option("--out", verify_out);

  std::string sweep_config;
  auto* sweep = app.add_subcommand("sweep", "Run a grid of matchups");
  sweep->add_option("--config", sweep_config, "Key-value sweep file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) {
      return Run(game, agent1, agent2, lookahead1, lookahead2, episodes,
                 trials, seed, out, window);
    }
    if (*verify) return Verify(verify_game, verify_out);
    if (*sweep) {
      for (const auto& dir : monfg::RunSweep(sweep_config)) {
        std::printf("wrote %s\n", dir.string().c_str());
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
