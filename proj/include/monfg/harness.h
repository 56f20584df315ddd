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

#ifndef MONFG_HARNESS_H_
#define MONFG_HARNESS_H_

// Matchups, episodes, trials and result files.
//
// An episode is a block of interactions under frozen policies followed by
// one simultaneous update of both learners. When either learner models its
// opponent from action counts the block is that learner's window (w
// interactions); otherwise it is a single interaction.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "monfg/equilibrium.h"
#include "monfg/game.h"
#include "monfg/learners.h"
#include "monfg/outcome.h"

namespace monfg {

inline constexpr std::uint64_t kTrialSeedStride = 1000003;

struct ExperimentConfig {
  std::string game = "1";  // catalogue id 1..5 or a game file path
  LearnerConfig agent1 = LearnerConfig::Defaults(Algorithm::kAc);
  LearnerConfig agent2 = LearnerConfig::Defaults(Algorithm::kAc);
  int episodes = 3000;
  int trials = 30;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
  double window_fraction = 0.1;

  // Throws ConfigError for any invalid field or a full-information learner
  // paired with one that is not.
  void Validate() const;
};

Monfg ResolveGame(const std::string& game);

// base * 1000003 + trial.
std::uint64_t TrialSeed(std::uint64_t base, int trial);

int InteractionsPerEpisode(const ExperimentConfig& config);

struct TrialLog {
  int trial = 0;
  int interactions_per_episode = 1;
  // One entry per interaction, episode-major.
  std::vector<std::uint8_t> action1;
  std::vector<std::uint8_t> action2;
  // Per episode, the policies in force during it: agent 1's probabilities
  // followed by agent 2's.
  std::vector<double> probabilities;

  int episodes() const;
};

struct RunArtifacts {
  ExperimentConfig config;
  Monfg game;
  std::vector<TrialLog> trials;
  OutcomeDistribution outcome;
  double wall_seconds = 0.0;
};

TrialLog RunTrial(const ExperimentConfig& config, const Monfg& game,
                  int trial);
RunArtifacts RunExperiment(const ExperimentConfig& config);

// Joint-action frequencies over the last ceil(fraction * episodes) episodes
// of every trial. Throws InvalidArgument on empty logs.
OutcomeDistribution ComputeOutcomeDistribution(
    const Monfg& game, const std::vector<TrialLog>& logs,
    double window_fraction);

// Mean action probabilities of `agent` (0 or 1) over the same window.
std::vector<double> MeanActionProbabilities(const Monfg& game,
                                            const std::vector<TrialLog>& logs,
                                            int agent, double window_fraction);

// outcomes.csv, traces.csv, summary.json and meta.json.
void EmitResults(const RunArtifacts& artifacts,
                 const std::filesystem::path& directory);

// One run per combination of the listed values:
//
//   game = 1 2 3
//   agent1 = ac acom
//   agent2 = ac
//   matchup = lola lola        (repeatable; replaces the agent1 x agent2 grid)
//   lookahead1 = 1 3
//   lookahead2 = 1
//   episodes = 3000
//   trials = 30
//   seed = 0
//   window = 0.1
//   out = results
//
// Each run is written to out/g<game>_<agent1>L<l1>_vs_<agent2>L<l2>.
// Mixed full-information matchups are skipped. Returns the directories
// written.
std::vector<std::filesystem::path> RunSweep(
    const std::filesystem::path& config_file);

}  // namespace monfg

#endif  // MONFG_HARNESS_H_
