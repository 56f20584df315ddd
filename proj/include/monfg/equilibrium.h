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

#ifndef MONFG_EQUILIBRIUM_H_
#define MONFG_EQUILIBRIUM_H_

// Brute-force SER best responses and Nash checks for two-agent MONFGs.

#include <vector>

#include "monfg/game.h"
#include "monfg/outcome.h"

namespace monfg {

inline constexpr double kDefaultResolution = 0.01;
inline constexpr double kDefaultNeTolerance = 1e-4;
inline constexpr int kRefinementHalvings = 20;

struct BestResponse {
  ProbabilityVector strategy;
  double value = 0.0;
};

// Grid search over the agent's simplex at `resolution`, then pairwise
// mass-shifting refinement down to resolution/2^20. Pure strategies are
// always on the grid.
BestResponse BestResponseValue(const Monfg& game,
                               const ProbabilityVector& opponent_strategy,
                               int agent, const UtilityFn& u,
                               double resolution = kDefaultResolution);

struct NeCertificate {
  MixedStrategyProfile profile;
  double epsilon = 0.0;  // max unilateral SER gain found
  bool is_pure = false;
  double search_resolution = kDefaultResolution;
  double tolerance = kDefaultNeTolerance;
  bool is_ne() const { return epsilon <= tolerance; }
};

// `utilities[i]` is agent i's utility.
NeCertificate VerifyNe(const Monfg& game, const MixedStrategyProfile& profile,
                       const std::vector<UtilityFn>& utilities,
                       double tolerance = kDefaultNeTolerance,
                       double resolution = kDefaultResolution);

enum class DeviationSet {
  kPure,   // exact arithmetic over pure deviations only
  kMixed,  // additionally a grid best response at the default resolution
};

std::vector<JointAction> EnumeratePureNe(
    const Monfg& game, const std::vector<UtilityFn>& utilities,
    DeviationSet deviations = DeviationSet::kPure);

// Total-variation distance 0.5 * sum |d - r|.
double OutcomeProximity(const OutcomeDistribution& dist,
                        const OutcomeDistribution& reference);

}  // namespace monfg

#endif  // MONFG_EQUILIBRIUM_H_
