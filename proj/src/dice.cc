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

#include "monfg/dice.h"

#include <cmath>
#include <map>

#include "monfg/errors.h"

namespace monfg {

RolloutBatch SampleRollouts(const Monfg& game, const PolicyParams& row,
                            const PolicyParams& column, int length, int batch,
                            Rng& rng) {
  if (game.num_agents() != 2) {
    throw InvalidArgument("rollouts are defined for two-agent games");
  }
  if (length < 1 || batch < 1) {
    throw InvalidArgument("rollout length and batch size must be >= 1");
  }
  const auto p_row = Probabilities(row);
  const auto p_col = Probabilities(column);
  if (static_cast<int>(p_row.size()) != game.num_actions(0) ||
      static_cast<int>(p_col.size()) != game.num_actions(1)) {
    throw InvalidArgument("policy sizes do not match the game");
  }
  RolloutBatch out;
  out.length = length;
  out.trajectories.reserve(batch);
  for (int b = 0; b < batch; ++b) {
    Trajectory traj;
    traj.reserve(length);
    for (int k = 0; k < length; ++k) {
      const int a1 = SampleFromProbabilities(p_row, rng);
      const int a2 = SampleFromProbabilities(p_col, rng);
      const auto r = game.Payoff(0, a1, a2);
      const auto c = game.Payoff(1, a1, a2);
      traj.push_back(RolloutStep{{a1, a2},
                                 {PayoffVector(r.begin(), r.end()),
                                  PayoffVector(c.begin(), c.end())}});
    }
    out.trajectories.push_back(std::move(traj));
  }
  return out;
}

ad::Var MagicBox(ad::Var tau) { return ad::Exp(tau - ad::StopGradient(tau)); }

ad::Var DiceObjective(ad::Graph& graph, const RolloutBatch& batch,
                      const std::array<std::vector<ad::Var>, 2>& log_probs,
                      int agent, const UtilityFn& u, double gamma) {
  if (agent < 0 || agent > 1) throw InvalidArgument("agent must be 0 or 1");
  if (batch.trajectories.empty()) throw InvalidArgument("empty rollout batch");

  // Identical action sequences carry identical payoffs in a stateless game,
  // so each distinct sequence contributes once with its multiplicity.
  std::map<std::vector<int>, std::pair<int, const Trajectory*>> groups;
  for (const auto& traj : batch.trajectories) {
    std::vector<int> key;
    key.reserve(traj.size() * 2);
    for (const auto& step : traj) {
      key.push_back(step.actions[0]);
      key.push_back(step.actions[1]);
    }
    auto [it, inserted] = groups.try_emplace(std::move(key), 0, &traj);
    ++it->second.first;
  }

  const double inv_batch = 1.0 / static_cast<double>(batch.trajectories.size());
  std::size_t num_objectives = 0;
  for (const auto& traj : batch.trajectories) {
    if (!traj.empty()) num_objectives = traj.front().payoffs[agent].size();
  }
  if (num_objectives == 0) throw InvalidArgument("rollouts carry no payoffs");

  std::vector<ad::Var> mean_return(num_objectives, graph.Constant(0.0));
  for (const auto& [key, group] : groups) {
    const auto& [count, traj] = group;
    ad::Var tau;
    double discount = 1.0;
    for (std::size_t k = 0; k < traj->size(); ++k) {
      const auto& step = (*traj)[k];
      const ad::Var step_log_prob = log_probs[0].at(step.actions[0]) +
                                    log_probs[1].at(step.actions[1]);
      tau = k == 0 ? step_log_prob : tau + step_log_prob;
      discount *= gamma;
      const ad::Var box = MagicBox(tau);
      const double weight = count * inv_batch * discount;
      for (std::size_t c = 0; c < num_objectives; ++c) {
        const double p = step.payoffs[agent][c];
        if (p == 0.0) continue;
        mean_return[c] = mean_return[c] + box * (weight * p);
      }
    }
  }
  return u.Eval(mean_return);
}

std::vector<double> DiceGradient(ad::Var objective,
                                 std::span<const ad::Var> wrt, int order) {
  if (order != 1 && order != 2) {
    throw UnsupportedError("DiCE gradients are supported up to order 2");
  }
  ad::Graph& graph = *objective.graph();
  const auto grad = graph.Grad(objective, wrt);
  if (order == 1) return graph.values(grad);
  std::vector<double> hessian;
  hessian.reserve(wrt.size() * wrt.size());
  for (const auto& g : grad) {
    const auto row = graph.Grad(g, wrt);
    for (const auto& v : row) hessian.push_back(v.value());
  }
  return hessian;
}

}  // namespace monfg
