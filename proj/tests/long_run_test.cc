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

// Slow property: every learner, in self-play on every catalogue game, keeps
// finite parameters and valid policies for 3000 episodes.

#include <cmath>
#include <numeric>
#include <string>

#include "doctest.h"
#include "monfg/harness.h"
#include "monfg/learners.h"

namespace monfg {
namespace {

constexpr int kEpisodes = 3000;

bool Finite(const PolicyParams& p) {
  for (double t : p.theta) {
    if (!std::isfinite(t)) return false;
  }
  return true;
}

bool Valid(const ProbabilityVector& p) {
  for (double x : p) {
    if (!(x >= 0.0 && x <= 1.0)) return false;
  }
  return std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) <= 1e-9;
}

// Returns the first episode at which a check failed, or -1.
int FirstBadEpisode(Algorithm algorithm, int game_id) {
  ExperimentConfig config;
  config.game = std::to_string(game_id);
  config.agent1 = LearnerConfig::Defaults(algorithm);
  config.agent2 = LearnerConfig::Defaults(algorithm);
  config.episodes = kEpisodes;
  config.trials = 1;
  config.seed = 5;
  const Monfg game = ResolveGame(config.game);
  const int per_episode = InteractionsPerEpisode(config);
  Rng rng(TrialSeed(config.seed, 0));

  auto row = Learner::Create(config.agent1, game, 0, RowUtility());
  auto col = Learner::Create(config.agent2, game, 1, ColumnUtility());
  if (config.agent1.full_information()) {
    auto* r = static_cast<MoLolaLearner*>(row.get());
    auto* c = static_cast<MoLolaLearner*>(col.get());
    r->SetOpponent(c);
    c->SetOpponent(r);
  }
  for (int ep = 0; ep < kEpisodes; ++ep) {
    const auto p1 = Probabilities(row->policy());
    const auto p2 = Probabilities(col->policy());
    if (!Finite(row->policy()) || !Finite(col->policy()) || !Valid(p1) ||
        !Valid(p2)) {
      return ep;
    }
    for (int i = 0; i < per_episode; ++i) {
      const int a1 = SampleFromProbabilities(p1, rng);
      const int a2 = SampleFromProbabilities(p2, rng);
      const auto r1 = game.Payoff(0, a1, a2);
      const auto r2 = game.Payoff(1, a1, a2);
      row->Observe(Experience{a1, a2, PayoffVector(r1.begin(), r1.end())});
      col->Observe(Experience{a2, a1, PayoffVector(r2.begin(), r2.end())});
    }
    row->EndEpisode(rng);
    col->EndEpisode(rng);
    row->Commit();
    col->Commit();
  }
  return Finite(row->policy()) && Finite(col->policy()) ? -1 : kEpisodes;
}

TEST_CASE("parameters stay finite over long self-play runs") {
  for (Algorithm a : {Algorithm::kAc, Algorithm::kAcom, Algorithm::kAcolam,
                      Algorithm::kMoLola, Algorithm::kLolam}) {
    for (int g = 1; g <= 5; ++g) {
      CAPTURE(ToString(a));
      CAPTURE(g);
      CHECK(FirstBadEpisode(a, g) == -1);
    }
  }
}

}  // namespace
}  // namespace monfg
