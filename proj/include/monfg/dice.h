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

#ifndef MONFG_DICE_H_
#define MONFG_DICE_H_

// DiCE objectives for two-agent MONFG rollouts.
//
// The magic box of a set of sampled actions W is exp(tau - stop(tau)) with
// tau the sum of their log-probabilities. It evaluates to exactly 1, but its
// derivatives reproduce score-function terms at every order, so
//
//   J = u( (1/B) sum_b sum_k box({a^{k' <= k}}) gamma^k p^k )
//
// has the value u(batch-mean return) and gradients that are unbiased
// estimates of the gradients of u(E[return]) up to the nonlinearity of u.

#include <array>
#include <span>
#include <vector>

#include "monfg/autodiff.h"
#include "monfg/game.h"
#include "monfg/policy.h"

namespace monfg {

struct RolloutStep {
  std::array<int, 2> actions;            // row, column
  std::array<PayoffVector, 2> payoffs;   // received by row, column
};

using Trajectory = std::vector<RolloutStep>;

struct RolloutBatch {
  std::vector<Trajectory> trajectories;
  int length = 0;
};

// B independent length-K rollouts of a two-agent game under fixed policies.
RolloutBatch SampleRollouts(const Monfg& game, const PolicyParams& row,
                            const PolicyParams& column, int length, int batch,
                            Rng& rng);

ad::Var MagicBox(ad::Var tau);

// DiCE objective of `agent` for `batch`. `log_probs[i]` holds agent i's
// log-probability expression for each of its actions. Trajectories with the
// same action sequence are merged into one weighted term, which leaves the
// value and every derivative unchanged.
ad::Var DiceObjective(ad::Graph& graph, const RolloutBatch& batch,
                      const std::array<std::vector<ad::Var>, 2>& log_probs,
                      int agent, const UtilityFn& u, double gamma);

// Order 1: the gradient. Order 2: the Hessian, row-major over `wrt`.
// Throws UnsupportedError for any other order.
std::vector<double> DiceGradient(ad::Var objective, std::span<const ad::Var> wrt,
                                 int order);

}  // namespace monfg

#endif  // MONFG_DICE_H_
