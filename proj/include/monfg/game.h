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

#ifndef MONFG_GAME_H_
#define MONFG_GAME_H_

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "monfg/autodiff.h"

namespace monfg {

using PayoffVector = std::vector<double>;
using ProbabilityVector = std::vector<double>;
using JointAction = std::vector<int>;

// A finite multi-objective normal-form game. Every joint action yields one
// payoff vector of length num_objectives() per agent. The catalogue games
// share one vector between both agents; the per-agent storage keeps
// general games expressible.
class Monfg {
 public:
  // Shared payoffs: `payoffs[flat joint index]` is received by every agent.
  Monfg(std::string name, std::vector<std::vector<std::string>> action_labels,
        int num_objectives, std::vector<PayoffVector> shared_payoffs);

  // Per-agent payoffs: `payoffs[agent][flat joint index]`.
  Monfg(std::string name, std::vector<std::vector<std::string>> action_labels,
        int num_objectives, std::vector<std::vector<PayoffVector>> payoffs);

  const std::string& name() const { return name_; }
  int num_agents() const { return static_cast<int>(action_labels_.size()); }
  int num_objectives() const { return num_objectives_; }
  int num_actions(int agent) const;
  const std::vector<int>& action_counts() const { return action_counts_; }
  const std::vector<std::string>& action_labels(int agent) const;
  int num_joint_actions() const { return num_joint_actions_; }
  bool shared_payoffs() const { return shared_; }

  // Row-major: the last agent's action varies fastest.
  int FlatIndex(std::span<const int> joint) const;
  JointAction Unflatten(int flat) const;

  std::span<const double> Payoff(int agent, std::span<const int> joint) const;
  std::span<const double> Payoff(int agent, int flat) const;

  // Two-agent convenience: payoff to `agent` when the row player plays `a1`
  // and the column player plays `a2`.
  std::span<const double> Payoff(int agent, int a1, int a2) const;

 private:
  void Validate() const;

  std::string name_;
  std::vector<std::vector<std::string>> action_labels_;
  std::vector<int> action_counts_;
  int num_objectives_;
  int num_joint_actions_;
  bool shared_;
  std::vector<std::vector<PayoffVector>> payoffs_;
};

// The five benchmark games; each is two-agent, two-objective.
Monfg GameCatalogue(int game_id);

// Reads a plain-text key-value game description:
//
//   name = my_game
//   objectives = 2
//   actions1 = L M
//   actions2 = L M
//   payoff L L = 4 0        # shared by all agents
//   payoff.2 L L = 1 1      # optional override for agent 2
//
// Lines starting with '#' are comments. Every joint action needs a payoff.
Monfg LoadGameFile(const std::filesystem::path& path);
Monfg ParseGame(const std::string& text);

class UtilityFn {
 public:
  enum class Id { kSumOfSquares, kProduct, kCustom };
  using Expression = std::function<ad::Var(std::span<const ad::Var>)>;

  // u(p) = sum_c p_c^2.
  static UtilityFn SumOfSquares();
  // u(p) = prod_c p_c.
  static UtilityFn Product();
  // Any utility expressible on the autodiff graph; the gradient comes from
  // reverse mode. Monotonicity is the caller's responsibility.
  static UtilityFn Custom(std::string name, Expression expression);
  static UtilityFn Linear(std::vector<double> weights);

  Id id() const { return id_; }
  const std::string& name() const { return name_; }

  double Eval(std::span<const double> payoff) const;
  std::vector<double> Grad(std::span<const double> payoff) const;
  ad::Var Eval(std::span<const ad::Var> payoff) const;

 private:
  UtilityFn(Id id, std::string name, Expression expression)
      : id_(id), name_(std::move(name)), expression_(std::move(expression)) {}

  Id id_;
  std::string name_;
  Expression expression_;
};

// Row player (agent 0) and column player (agent 1) utilities of the
// benchmark games.
inline UtilityFn RowUtility() { return UtilityFn::SumOfSquares(); }
inline UtilityFn ColumnUtility() { return UtilityFn::Product(); }

struct MixedStrategyProfile {
  std::vector<ProbabilityVector> strategies;

  static MixedStrategyProfile Pure(const Monfg& game,
                                   std::span<const int> joint);
  static MixedStrategyProfile Uniform(const Monfg& game);
  bool IsPure(double tol = 1e-12) const;
};

// Throws InvalidArgument unless `profile` has one probability vector per
// agent, sized to its action set, nonnegative and summing to 1 (1e-9).
void ValidateProfile(const Monfg& game, const MixedStrategyProfile& profile);

// E[p_agent] under the profile.
PayoffVector ExpectedPayoff(const Monfg& game,
                            const MixedStrategyProfile& profile, int agent);

// Scalarised expected returns: u(E[p]).
double SerUtility(const Monfg& game, const MixedStrategyProfile& profile,
                  int agent, const UtilityFn& u);

// Expected scalarised returns: E[u(p)]. Reported for comparison only; no
// learner optimizes it.
double EsrUtility(const Monfg& game, const MixedStrategyProfile& profile,
                  int agent, const UtilityFn& u);

}  // namespace monfg

#endif  // MONFG_GAME_H_
