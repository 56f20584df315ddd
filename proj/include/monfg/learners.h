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

#ifndef MONFG_LEARNERS_H_
#define MONFG_LEARNERS_H_

// The five learners, all maximising the utility of the expected payoff:
//
//   AC      actor-critic over own-action values Q(a).
//   ACOM    actor-critic over joint values Q(a, a'), marginalising out an
//           action-frequency model of the opponent.
//   ACOLAM  ACOM, but the opponent model is first advanced L times along a
//           GP prediction of the opponent's learning step.
//   MOLOLA  DiCE policy gradient that differentiates through L anticipated
//           opponent steps; needs the opponent's parameters and utility.
//   LOLAM   MOLOLA with the anticipated steps replaced by GP predictions,
//           built only from observed actions.
//
// Each update is exposed as a free function on an explicit state so it can
// be tested in isolation; Learner wraps them for the experiment loop.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "monfg/critic.h"
#include "monfg/game.h"
#include "monfg/gp.h"
#include "monfg/opponent_model.h"
#include "monfg/policy.h"

namespace monfg {

enum class Algorithm { kAc, kAcom, kAcolam, kMoLola, kLolam };

std::string ToString(Algorithm algorithm);
// Accepts ac, acom, acolam, lola (also molola, mo-lola), lolam.
Algorithm ParseAlgorithm(const std::string& name);

struct LearnerConfig {
  Algorithm algorithm = Algorithm::kAc;
  double alpha_theta = 0.05;
  double alpha_q = 0.05;
  double alpha_in = 0.05;
  int lookahead = 1;
  int rollout_length = 1;
  int rollout_batch = 64;
  double gamma = 1.0;
  int history = 50;
  int window = 100;
  bool shape_through_gp = true;
  double gp_noise = kDefaultGpNoise;  // initial value when learned
  bool learn_gp_noise = true;
  double gp_min_length_scale = 0.3;
  int evidence_iters = kDefaultEvidenceIters;
  double smoothing = kDefaultSmoothing;

  // Parameter values used for all reported experiments.
  static LearnerConfig Defaults(Algorithm algorithm, int lookahead = 1);

  PolicyKind policy_kind() const;
  bool uses_opponent_model() const;
  bool full_information() const { return algorithm == Algorithm::kMoLola; }
  void Validate() const;
};

// One interaction from the learner's own point of view.
struct Experience {
  int own_action = 0;
  int opponent_action = 0;
  PayoffVector payoff;
};

// J(theta) = u(sum_a pi(a|theta) v_a) and its analytical gradient
// [sum_a d pi(a)/d theta v_a]^T grad u.
double SerObjective(const PolicyParams& policy,
                    const std::vector<std::vector<double>>& action_values,
                    const UtilityFn& u);
std::vector<double> SerObjectiveGradient(
    const PolicyParams& policy,
    const std::vector<std::vector<double>>& action_values, const UtilityFn& u);

// J = u(sum_a pi1(a) sum_a' pi2(a') Q(a, a')) differentiated with respect to
// both policies' parameters.
struct JointObjective {
  double value = 0.0;
  std::vector<double> own_gradient;
  std::vector<double> opponent_gradient;
};
JointObjective MarginalisedObjective(const PolicyParams& own,
                                     const PolicyParams& opponent,
                                     const MoQTable& q, const UtilityFn& u);

// --- AC -------------------------------------------------------------------

struct AcState {
  PolicyParams policy;
  MoQTable q;
};

AcState MakeAcState(int num_actions, int num_objectives);
// Critic update only.
void AcObserve(AcState& state, int own_action, std::span<const double> payoff,
               double alpha_q);
// Actor update only.
void AcPolicyStep(AcState& state, const LearnerConfig& config,
                  const UtilityFn& u);
// Both, for a single interaction.
void AcUpdate(AcState& state, int own_action, std::span<const double> payoff,
              const LearnerConfig& config, const UtilityFn& u);

// --- ACOM -----------------------------------------------------------------

struct AcomState {
  PolicyParams policy;
  MoQTable q;
  FrequencyModel model;
};

AcomState MakeAcomState(int num_actions, int num_opponent_actions,
                        int num_objectives, const LearnerConfig& config);
// Critic updates for every interaction of the episode, opponent policy
// re-estimated from the episode, then one ascent step on the marginalised
// objective. Resets the estimation window. Throws on an empty episode.
void AcomUpdate(AcomState& state, std::span<const Experience> episode,
                const LearnerConfig& config, const UtilityFn& u);

// --- GP lookahead (ACOLAM and LOLAM) --------------------------------------

struct LookaheadResult {
  std::vector<double> opponent_theta;  // theta'_2 after L predicted steps
  // d theta'_2 / d theta_1 through the GP mean; zero when not shaping.
  Eigen::MatrixXd opponent_jacobian;
  bool used_gp = false;
};

// Fits the step model on `history` (warm-starting from `kernel` and
// `noise`, and storing the optimised values back into them), then advances
// theta'_2 <- theta'_2 + alpha_in mu(theta_1, theta'_2) L times. With fewer
// than two history entries, or when the fit fails, theta'_2 stays at the
// estimate.
LookaheadResult GpLookahead(const StepHistory& history,
                            std::span<const double> own_theta,
                            std::span<const double> opponent_estimate,
                            const LearnerConfig& config, Kernel& kernel,
                            double& noise);

// Same recursion against an already fitted model.
LookaheadResult GpLookahead(const GpModel& model,
                            std::span<const double> own_theta,
                            std::span<const double> opponent_estimate,
                            const LearnerConfig& config);

// Bookkeeping shared by the two learning-aware modelling agents.
struct StepTracker {
  StepHistory history;
  // <own theta, estimated opponent theta> of the previous episode.
  std::optional<std::pair<std::vector<double>, std::vector<double>>> previous;
  Kernel kernel;
  double noise = 0.0;  // 0 until the first fit

  // Records the step from the previous episode's estimate to `estimate`,
  // then remembers (own_theta, estimate) for the next call.
  void Record(std::span<const double> own_theta,
              std::span<const double> estimate, double alpha_in);
};

// --- ACOLAM ---------------------------------------------------------------

struct AcolamState {
  PolicyParams policy;
  MoQTable q;
  FrequencyModel model;
  StepTracker tracker;
};

AcolamState MakeAcolamState(int num_actions, int num_opponent_actions,
                            int num_objectives, const LearnerConfig& config);
LookaheadResult AcolamUpdate(AcolamState& state,
                             std::span<const Experience> episode,
                             const LearnerConfig& config, const UtilityFn& u);

// --- MO-LOLA --------------------------------------------------------------

// Everything MO-LOLA reads about its opponent. Only this entry point sees
// another agent's parameters or utility.
struct FullInformationView {
  const Monfg& game;
  int agent;  // 0 = row, 1 = column
  const PolicyParams& own;
  const PolicyParams& opponent;
  const UtilityFn& own_utility;
  const UtilityFn& opponent_utility;
};

// The gradient MO-LOLA ascends, for inspection and testing.
std::vector<double> MoLolaGradient(const FullInformationView& view,
                                   const LearnerConfig& config, Rng& rng);
// Returns the updated own parameters.
std::vector<double> MoLolaUpdate(const FullInformationView& view,
                                 const LearnerConfig& config, Rng& rng);

// --- LOLAM ----------------------------------------------------------------

struct LolamState {
  PolicyParams policy;
  FrequencyModel model;
  StepTracker tracker;
};

LolamState MakeLolamState(int num_actions, int num_opponent_actions,
                          const LearnerConfig& config);

// DiCE gradient of the own objective against a (possibly anticipated)
// opponent parameter vector, plus the chain-rule term through `jacobian`.
std::vector<double> LolamGradient(const Monfg& game, int agent,
                                  const PolicyParams& own,
                                  const PolicyParams& anticipated_opponent,
                                  const Eigen::MatrixXd& jacobian,
                                  const LearnerConfig& config,
                                  const UtilityFn& u, Rng& rng);

// Uses the estimation window filled since the last update; resets it.
LookaheadResult LolamUpdate(LolamState& state, const Monfg& game, int agent,
                            const LearnerConfig& config, const UtilityFn& u,
                            Rng& rng);

// --- Experiment-loop wrapper ----------------------------------------------

class Learner {
 public:
  virtual ~Learner() = default;

  // `agent` is the learner's seat in `game`: 0 = row, 1 = column.
  static std::unique_ptr<Learner> Create(const LearnerConfig& config,
                                         const Monfg& game, int agent,
                                         UtilityFn utility);

  const LearnerConfig& config() const { return config_; }
  int agent() const { return agent_; }
  const UtilityFn& utility() const { return utility_; }
  virtual const PolicyParams& policy() const = 0;

  // Called once per interaction with that interaction's outcome.
  virtual void Observe(const Experience& experience) = 0;
  // Computes the end-of-episode update without making it visible.
  virtual void EndEpisode(Rng& rng) = 0;
  // Publishes the update computed by EndEpisode.
  virtual void Commit() = 0;

 protected:
  Learner(LearnerConfig config, const Monfg& game, int agent, UtilityFn u)
      : config_(std::move(config)),
        game_(game),
        agent_(agent),
        utility_(std::move(u)) {}

  LearnerConfig config_;
  const Monfg& game_;
  int agent_;
  UtilityFn utility_;
};

// MO-LOLA additionally needs its opponent before every update.
class MoLolaLearner : public Learner {
 public:
  MoLolaLearner(LearnerConfig config, const Monfg& game, int agent,
                UtilityFn utility);

  void SetOpponent(const MoLolaLearner* opponent) { opponent_ = opponent; }
  const PolicyParams& policy() const override { return policy_; }
  void Observe(const Experience&) override {}
  void EndEpisode(Rng& rng) override;
  void Commit() override;

 private:
  const MoLolaLearner* opponent_ = nullptr;
  PolicyParams policy_;
  std::vector<double> pending_;
};

}  // namespace monfg

#endif  // MONFG_LEARNERS_H_
