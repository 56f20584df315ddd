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

#ifndef MONFG_CRITIC_H_
#define MONFG_CRITIC_H_

#include <optional>
#include <span>
#include <vector>

namespace monfg {

// Stateless multi-objective action values, either over the agent's own
// actions or over (own, opponent) joint actions. Zero-initialized.
class MoQTable {
 public:
  enum class Scope { kOwnAction, kJointAction };

  static MoQTable OwnAction(int num_own_actions, int num_objectives);
  static MoQTable JointAction(int num_own_actions, int num_opponent_actions,
                              int num_objectives);

  Scope scope() const { return scope_; }
  int num_own_actions() const { return num_own_; }
  int num_opponent_actions() const { return num_opp_; }
  int num_objectives() const { return num_objectives_; }

  // Q(own) for kOwnAction tables.
  std::span<const double> Value(int own) const;
  // Q(own, opp) for kJointAction tables.
  std::span<const double> Value(int own, int opp) const;

  // Q <- Q + alpha (payoff - Q). `opp` must be given exactly when the table
  // is joint.
  void Update(int own, std::optional<int> opp, std::span<const double> payoff,
              double alpha);

  // Per own action, the opponent-marginalised value
  // sum_{a'} opp(a') Q(a, a') (joint), or Q(a) itself (own-action).
  std::vector<std::vector<double>> OwnActionValues(
      std::optional<std::span<const double>> opp) const;

  // sum_a own(a) Q(a) or sum_a sum_a' own(a) opp(a') Q(a, a').
  std::vector<double> ExpectedReturnEstimate(
      std::span<const double> own,
      std::optional<std::span<const double>> opp) const;

 private:
  MoQTable(Scope scope, int num_own, int num_opp, int num_objectives);
  std::size_t Offset(int own, int opp) const;

  Scope scope_;
  int num_own_;
  int num_opp_;
  int num_objectives_;
  std::vector<double> values_;
};

}  // namespace monfg

#endif  // MONFG_CRITIC_H_
