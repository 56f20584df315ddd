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

#include "monfg/learners.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <spdlog/spdlog.h>

#include "monfg/autodiff.h"
#include "monfg/dice.h"
#include "monfg/errors.h"

namespace monfg {
namespace {

void CheckFinite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw NumericDomainError(std::string(what) + " became non-finite");
    }
  }
}

void Ascend(std::vector<double>& theta, const std::vector<double>& grad,
            double step) {
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] += step * grad[i];
  CheckFinite(theta, "policy parameters");
}

// sum_a w_a * dpi(a)/dtheta, for action weights w_a.
std::vector<double> WeightedProbabilityGradient(
    const PolicyParams& policy, const std::vector<double>& weights) {
  const auto dpi = GradProbabilities(policy);
  std::vector<double> out(policy.theta.size(), 0.0);
  for (std::size_t a = 0; a < dpi.size(); ++a) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += weights[a] * dpi[a][j];
  }
  return out;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::array<std::vector<ad::Var>, 2> SeatLogProbs(
    int agent, const PolicyParams& own, std::span<const ad::Var> own_theta,
    const PolicyParams& opp, std::span<const ad::Var> opp_theta) {
  std::array<std::vector<ad::Var>, 2> lp;
  lp[agent] = LogProbabilities(own.kind, own.num_actions, own_theta);
  lp[1 - agent] = LogProbabilities(opp.kind, opp.num_actions, opp_theta);
  return lp;
}

RolloutBatch SeatRollouts(const Monfg& game, int agent, const PolicyParams& own,
                          const PolicyParams& opp, const LearnerConfig& config,
                          Rng& rng) {
  const PolicyParams& row = agent == 0 ? own : opp;
  const PolicyParams& col = agent == 0 ? opp : own;
  return SampleRollouts(game, row, col, config.rollout_length,
                        config.rollout_batch, rng);
}

PolicyParams WithTheta(const PolicyParams& like, std::vector<double> theta) {
  return PolicyParams{like.kind, like.num_actions, std::move(theta)};
}

}  // namespace

std::string ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kAc: return "ac";
    case Algorithm::kAcom: return "acom";
    case Algorithm::kAcolam: return "acolam";
    case Algorithm::kMoLola: return "lola";
    case Algorithm::kLolam: return "lolam";
  }
  return "?";
}

Algorithm ParseAlgorithm(const std::string& name) {
  std::string s;
  for (char c : name) {
    if (c != '-' && c != '_') s += static_cast<char>(std::tolower(c));
  }
  if (s == "ac") return Algorithm::kAc;
  if (s == "acom") return Algorithm::kAcom;
  if (s == "acolam") return Algorithm::kAcolam;
  if (s == "lola" || s == "molola") return Algorithm::kMoLola;
  if (s == "lolam") return Algorithm::kLolam;
  throw InvalidArgument("unknown algorithm '" + name + "'");
}

LearnerConfig LearnerConfig::Defaults(Algorithm algorithm, int lookahead) {
  LearnerConfig c;
  c.algorithm = algorithm;
  c.lookahead = lookahead;
  switch (algorithm) {
    case Algorithm::kAc:
      c.alpha_theta = 0.05;
      c.alpha_q = 0.05;
      break;
    case Algorithm::kAcom:
      c.alpha_theta = 0.05;
      c.alpha_q = 1.0;
      break;
    case Algorithm::kAcolam:
      c.alpha_theta = 0.05;
      c.alpha_q = 1.0;
      c.alpha_in = 0.05;
      break;
    case Algorithm::kMoLola:
    case Algorithm::kLolam:
      c.alpha_theta = 0.1;
      c.alpha_in = 0.2;
      break;
  }
  return c;
}

PolicyKind LearnerConfig::policy_kind() const {
  return algorithm == Algorithm::kMoLola || algorithm == Algorithm::kLolam
             ? PolicyKind::kSigmoid
             : PolicyKind::kSoftmax;
}

bool LearnerConfig::uses_opponent_model() const {
  return algorithm == Algorithm::kAcom || algorithm == Algorithm::kAcolam ||
         algorithm == Algorithm::kLolam;
}

void LearnerConfig::Validate() const {
  auto rate = [](double r, const char* name) {
    if (!std::isfinite(r) || r < 0.0) {
      throw InvalidArgument(std::string(name) + " must be finite and >= 0");
    }
  };
  rate(alpha_theta, "alpha_theta");
  rate(alpha_q, "alpha_q");
  rate(alpha_in, "alpha_in");
  if (alpha_q > 1.0) throw InvalidArgument("alpha_q must be <= 1");
  if (lookahead < 0) throw InvalidArgument("lookahead must be >= 0");
  if (rollout_length < 1 || rollout_batch < 1) {
    throw InvalidArgument("rollout length and batch must be >= 1");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw InvalidArgument("gamma must lie in [0, 1]");
  }
  if (history < 1) throw InvalidArgument("history must be >= 1");
  if (window < 1) throw InvalidArgument("window must be >= 1");
  if (!(gp_noise > 0.0)) throw InvalidArgument("gp_noise must be > 0");
  if (evidence_iters < 0) throw InvalidArgument("evidence_iters must be >= 0");
  if (!(smoothing > 0.0)) throw InvalidArgument("smoothing must be > 0");
  if (!(gp_min_length_scale > 0.0)) {
    throw InvalidArgument("gp_min_length_scale must be > 0");
  }
}

double SerObjective(const PolicyParams& policy,
                    const std::vector<std::vector<double>>& action_values,
                    const UtilityFn& u) {
  const auto pi = Probabilities(policy);
  if (action_values.size() != pi.size()) {
    throw InvalidArgument("one value vector per action is required");
  }
  std::vector<double> v(action_values.front().size(), 0.0);
  for (std::size_t a = 0; a < pi.size(); ++a) {
    for (std::size_t c = 0; c < v.size(); ++c) v[c] += pi[a] * action_values[a][c];
  }
  return u.Eval(v);
}

std::vector<double> SerObjectiveGradient(
    const PolicyParams& policy,
    const std::vector<std::vector<double>>& action_values, const UtilityFn& u) {
  const auto pi = Probabilities(policy);
  if (action_values.size() != pi.size()) {
    throw InvalidArgument("one value vector per action is required");
  }
  std::vector<double> v(action_values.front().size(), 0.0);
  for (std::size_t a = 0; a < pi.size(); ++a) {
    for (std::size_t c = 0; c < v.size(); ++c) v[c] += pi[a] * action_values[a][c];
  }
  const auto du = u.Grad(v);
  std::vector<double> weights(pi.size());
  for (std::size_t a = 0; a < pi.size(); ++a) {
    weights[a] = Dot(action_values[a], du);
  }
  return WeightedProbabilityGradient(policy, weights);
}

JointObjective MarginalisedObjective(const PolicyParams& own,
                                     const PolicyParams& opponent,
                                     const MoQTable& q, const UtilityFn& u) {
  if (q.scope() != MoQTable::Scope::kJointAction) {
    throw InvalidArgument("marginalised objective needs a joint-action table");
  }
  const auto p1 = Probabilities(own);
  const auto p2 = Probabilities(opponent);
  if (static_cast<int>(p1.size()) != q.num_own_actions() ||
      static_cast<int>(p2.size()) != q.num_opponent_actions()) {
    throw InvalidArgument("policy sizes do not match the Q table");
  }
  const int c_count = q.num_objectives();
  std::vector<double> v(c_count, 0.0);
  for (std::size_t a = 0; a < p1.size(); ++a) {
    for (std::size_t b = 0; b < p2.size(); ++b) {
      const auto qab = q.Value(a, b);
      for (int c = 0; c < c_count; ++c) v[c] += p1[a] * p2[b] * qab[c];
    }
  }
  const auto du = u.Grad(v);

  std::vector<double> w1(p1.size(), 0.0), w2(p2.size(), 0.0);
  for (std::size_t a = 0; a < p1.size(); ++a) {
    for (std::size_t b = 0; b < p2.size(); ++b) {
      const double g = Dot(q.Value(a, b), du);
      w1[a] += p2[b] * g;
      w2[b] += p1[a] * g;
    }
  }
  JointObjective out;
  out.value = u.Eval(v);
  out.own_gradient = WeightedProbabilityGradient(own, w1);
  out.opponent_gradient = WeightedProbabilityGradient(opponent, w2);
  return out;
}

// --- AC -------------------------------------------------------------------

AcState MakeAcState(int num_actions, int num_objectives) {
  return AcState{PolicyParams::Zeros(PolicyKind::kSoftmax, num_actions),
                 MoQTable::OwnAction(num_actions, num_objectives)};
}

void AcObserve(AcState& state, int own_action, std::span<const double> payoff,
               double alpha_q) {
  state.q.Update(own_action, std::nullopt, payoff, alpha_q);
}

void AcPolicyStep(AcState& state, const LearnerConfig& config,
                  const UtilityFn& u) {
  const auto values = state.q.OwnActionValues(std::nullopt);
  Ascend(state.policy.theta, SerObjectiveGradient(state.policy, values, u),
         config.alpha_theta);
}

void AcUpdate(AcState& state, int own_action, std::span<const double> payoff,
              const LearnerConfig& config, const UtilityFn& u) {
  AcObserve(state, own_action, payoff, config.alpha_q);
  AcPolicyStep(state, config, u);
}

// --- ACOM -----------------------------------------------------------------

AcomState MakeAcomState(int num_actions, int num_opponent_actions,
                        int num_objectives, const LearnerConfig& config) {
  return AcomState{
      PolicyParams::Zeros(PolicyKind::kSoftmax, num_actions),
      MoQTable::JointAction(num_actions, num_opponent_actions, num_objectives),
      FrequencyModel(num_opponent_actions, config.window,
                     PolicyKind::kSoftmax)};
}

namespace {

// Critic and opponent-model part shared by ACOM and ACOLAM. Returns the
// estimated opponent parameters.
std::vector<double> ObserveEpisode(MoQTable& q, FrequencyModel& model,
                                   std::span<const Experience> episode,
                                   const LearnerConfig& config) {
  if (episode.empty()) throw InvalidArgument("empty episode");
  model.Reset();
  const std::size_t first =
      episode.size() > static_cast<std::size_t>(model.window())
          ? episode.size() - model.window()
          : 0;
  for (std::size_t i = 0; i < episode.size(); ++i) {
    const auto& e = episode[i];
    q.Update(e.own_action, e.opponent_action, e.payoff, config.alpha_q);
    if (i >= first) model.Observe(e.opponent_action);
  }
  const auto probs = model.EstimatePolicy(config.smoothing);
  model.Reset();
  return InvertToParams(probs, model.assumed_kind()).theta;
}

}  // namespace

void AcomUpdate(AcomState& state, std::span<const Experience> episode,
                const LearnerConfig& config, const UtilityFn& u) {
  const auto estimate = ObserveEpisode(state.q, state.model, episode, config);
  const PolicyParams opponent = PolicyParams{
      PolicyKind::kSoftmax, state.q.num_opponent_actions(), estimate};
  const auto obj = MarginalisedObjective(state.policy, opponent, state.q, u);
  Ascend(state.policy.theta, obj.own_gradient, config.alpha_theta);
}

// --- GP lookahead ---------------------------------------------------------

LookaheadResult GpLookahead(const GpModel& model,
                            std::span<const double> own_theta,
                            std::span<const double> opponent_estimate,
                            const LearnerConfig& config) {
  const int d1 = static_cast<int>(own_theta.size());
  const int e = static_cast<int>(opponent_estimate.size());
  if (model.input_dim() != d1 + e || model.num_tasks() != e) {
    throw InvalidArgument("GP dimensions do not match the lookahead");
  }
  Eigen::VectorXd x(d1 + e);
  for (int i = 0; i < d1; ++i) x[i] = own_theta[i];
  Eigen::VectorXd theta2(e);
  for (int i = 0; i < e; ++i) theta2[i] = opponent_estimate[i];
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(e, d1);

  for (int l = 0; l < config.lookahead; ++l) {
    x.tail(e) = theta2;
    const Eigen::VectorXd mu = model.PosteriorMean(x);
    if (config.shape_through_gp) {
      const Eigen::MatrixXd g = model.PosteriorMeanInputGradient(x);
      jac += config.alpha_in * (g.leftCols(d1) + g.rightCols(e) * jac);
    }
    theta2 += config.alpha_in * mu;
  }
  LookaheadResult out;
  out.opponent_theta.assign(theta2.data(), theta2.data() + e);
  out.opponent_jacobian = std::move(jac);
  out.used_gp = true;
  CheckFinite(out.opponent_theta, "anticipated opponent parameters");
  return out;
}

LookaheadResult GpLookahead(const StepHistory& history,
                            std::span<const double> own_theta,
                            std::span<const double> opponent_estimate,
                            const LearnerConfig& config, Kernel& kernel,
                            double& noise) {
  const int d1 = static_cast<int>(own_theta.size());
  const int e = static_cast<int>(opponent_estimate.size());
  LookaheadResult fallback;
  fallback.opponent_theta.assign(opponent_estimate.begin(),
                                 opponent_estimate.end());
  fallback.opponent_jacobian = Eigen::MatrixXd::Zero(e, d1);
  if (config.lookahead == 0 || history.size() < 2) return fallback;

  if (kernel.input_dim() != d1 + e || kernel.num_tasks() != e) {
    kernel = Kernel::MultiTask(d1 + e, e);
  }
  if (!(noise > 0.0) || !config.learn_gp_noise) noise = config.gp_noise;
  std::vector<std::vector<double>> inputs, outputs;
  inputs.reserve(history.size());
  outputs.reserve(history.size());
  for (const auto& s : history) {
    inputs.push_back(s.Input());
    outputs.push_back(s.step);
  }
  try {
    GpModel model = GpModel::Fit(kernel, noise, inputs, outputs)
                        .OptimizeEvidence(config.evidence_iters,
                                          config.learn_gp_noise,
                                          config.gp_min_length_scale);
    // Second start from a fresh kernel with the noise at the targets' own
    // scale. The warm start alone can sit in a basin with tiny noise and
    // short length scales, whose mean has huge spurious input gradients.
    double fresh_noise = config.gp_noise;
    if (config.learn_gp_noise) {
      double second_moment = 0.0;
      for (const auto& y : outputs) {
        for (double v : y) second_moment += v * v;
      }
      second_moment /= static_cast<double>(outputs.size() * e);
      fresh_noise = std::clamp(second_moment, std::exp(kMinLogNoise),
                               std::exp(kMaxLogNoise));
    }
    GpModel fresh =
        GpModel::Fit(Kernel::MultiTask(d1 + e, e), fresh_noise, inputs, outputs)
            .OptimizeEvidence(config.evidence_iters, config.learn_gp_noise,
                              config.gp_min_length_scale);
    if (fresh.LogEvidence() > model.LogEvidence()) model = std::move(fresh);
    kernel = model.kernel();
    noise = model.noise();
    return GpLookahead(model, own_theta, opponent_estimate, config);
  } catch (const std::exception& ex) {
    spdlog::warn("GP lookahead skipped: {}", ex.what());
    kernel = Kernel::MultiTask(d1 + e, e);
    noise = config.gp_noise;
    return fallback;
  }
}

void StepTracker::Record(std::span<const double> own_theta,
                         std::span<const double> estimate, double alpha_in) {
  std::vector<double> own(own_theta.begin(), own_theta.end());
  std::vector<double> est(estimate.begin(), estimate.end());
  if (previous && alpha_in > 0.0) {
    history.Push(previous->first, previous->second,
                 EstimateStep(previous->second, est, alpha_in));
  }
  previous.emplace(std::move(own), std::move(est));
}

// --- ACOLAM ---------------------------------------------------------------

AcolamState MakeAcolamState(int num_actions, int num_opponent_actions,
                            int num_objectives, const LearnerConfig& config) {
  return AcolamState{
      PolicyParams::Zeros(PolicyKind::kSoftmax, num_actions),
      MoQTable::JointAction(num_actions, num_opponent_actions, num_objectives),
      FrequencyModel(num_opponent_actions, config.window, PolicyKind::kSoftmax),
      StepTracker{StepHistory(config.history), std::nullopt, Kernel{}, 0.0}};
}

LookaheadResult AcolamUpdate(AcolamState& state,
                             std::span<const Experience> episode,
                             const LearnerConfig& config, const UtilityFn& u) {
  const auto estimate = ObserveEpisode(state.q, state.model, episode, config);
  state.tracker.Record(state.policy.theta, estimate, config.alpha_in);
  auto la = GpLookahead(state.tracker.history, state.policy.theta, estimate,
                        config, state.tracker.kernel,
                        state.tracker.noise);

  const PolicyParams anticipated = PolicyParams{
      PolicyKind::kSoftmax, state.q.num_opponent_actions(), la.opponent_theta};
  const auto obj = MarginalisedObjective(state.policy, anticipated, state.q, u);
  std::vector<double> grad = obj.own_gradient;
  if (config.shape_through_gp && la.used_gp) {
    const Eigen::Map<const Eigen::VectorXd> g2(obj.opponent_gradient.data(),
                                               obj.opponent_gradient.size());
    const Eigen::VectorXd shaping = la.opponent_jacobian.transpose() * g2;
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += shaping[i];
  }
  Ascend(state.policy.theta, grad, config.alpha_theta);
  return la;
}

// --- MO-LOLA --------------------------------------------------------------

std::vector<double> MoLolaGradient(const FullInformationView& view,
                                   const LearnerConfig& config, Rng& rng) {
  if (view.agent != 0 && view.agent != 1) {
    throw InvalidArgument("agent must be 0 or 1");
  }
  ad::Graph g;
  const auto own = g.Parameters(view.own.theta);
  std::vector<ad::Var> opp = g.Parameters(view.opponent.theta);

  for (int l = 0; l < config.lookahead; ++l) {
    const PolicyParams current = WithTheta(view.opponent, g.values(opp));
    const auto batch =
        SeatRollouts(view.game, view.agent, view.own, current, config, rng);
    const auto lp = SeatLogProbs(view.agent, view.own, own, view.opponent, opp);
    const ad::Var j2 = DiceObjective(g, batch, lp, 1 - view.agent,
                                     view.opponent_utility, config.gamma);
    const auto step = g.Grad(j2, opp);
    for (std::size_t i = 0; i < opp.size(); ++i) {
      opp[i] = opp[i] + config.alpha_in * step[i];
    }
  }

  const PolicyParams anticipated = WithTheta(view.opponent, g.values(opp));
  const auto batch =
      SeatRollouts(view.game, view.agent, view.own, anticipated, config, rng);
  const auto lp = SeatLogProbs(view.agent, view.own, own, view.opponent, opp);
  const ad::Var j1 =
      DiceObjective(g, batch, lp, view.agent, view.own_utility, config.gamma);
  return DiceGradient(j1, own, 1);
}

std::vector<double> MoLolaUpdate(const FullInformationView& view,
                                 const LearnerConfig& config, Rng& rng) {
  std::vector<double> theta = view.own.theta;
  Ascend(theta, MoLolaGradient(view, config, rng), config.alpha_theta);
  return theta;
}

// --- LOLAM ----------------------------------------------------------------

LolamState MakeLolamState(int num_actions, int num_opponent_actions,
                          const LearnerConfig& config) {
  return LolamState{
      PolicyParams::Uniform(PolicyKind::kSigmoid, num_actions),
      FrequencyModel(num_opponent_actions, config.window, PolicyKind::kSigmoid),
      StepTracker{StepHistory(config.history), std::nullopt, Kernel{}, 0.0}};
}

std::vector<double> LolamGradient(const Monfg& game, int agent,
                                  const PolicyParams& own,
                                  const PolicyParams& anticipated_opponent,
                                  const Eigen::MatrixXd& jacobian,
                                  const LearnerConfig& config,
                                  const UtilityFn& u, Rng& rng) {
  if (agent != 0 && agent != 1) throw InvalidArgument("agent must be 0 or 1");
  ad::Graph g;
  const auto own_vars = g.Parameters(own.theta);
  const auto opp_vars = g.Parameters(anticipated_opponent.theta);
  const auto batch =
      SeatRollouts(game, agent, own, anticipated_opponent, config, rng);
  const auto lp =
      SeatLogProbs(agent, own, own_vars, anticipated_opponent, opp_vars);
  const ad::Var j1 = DiceObjective(g, batch, lp, agent, u, config.gamma);

  std::vector<ad::Var> wrt(own_vars);
  wrt.insert(wrt.end(), opp_vars.begin(), opp_vars.end());
  const auto all = DiceGradient(j1, wrt, 1);

  const std::size_t d1 = own_vars.size();
  std::vector<double> grad(all.begin(), all.begin() + d1);
  if (jacobian.size() > 0) {
    if (jacobian.rows() != static_cast<Eigen::Index>(opp_vars.size()) ||
        jacobian.cols() != static_cast<Eigen::Index>(d1)) {
      throw InvalidArgument("opponent Jacobian has the wrong shape");
    }
    for (std::size_t i = 0; i < d1; ++i) {
      for (std::size_t e = 0; e < opp_vars.size(); ++e) {
        grad[i] += jacobian(e, i) * all[d1 + e];
      }
    }
  }
  return grad;
}

LookaheadResult LolamUpdate(LolamState& state, const Monfg& game, int agent,
                            const LearnerConfig& config, const UtilityFn& u,
                            Rng& rng) {
  const auto probs = state.model.EstimatePolicy(config.smoothing);
  state.model.Reset();
  const auto estimate = InvertToParams(probs, PolicyKind::kSigmoid).theta;
  state.tracker.Record(state.policy.theta, estimate, config.alpha_in);
  auto la = GpLookahead(state.tracker.history, state.policy.theta, estimate,
                        config, state.tracker.kernel,
                        state.tracker.noise);

  const int n_opp = game.num_actions(1 - agent);
  const PolicyParams anticipated{PolicyKind::kSigmoid, n_opp,
                                 la.opponent_theta};
  const Eigen::MatrixXd none;
  const bool shape = config.shape_through_gp && la.used_gp;
  const auto grad =
      LolamGradient(game, agent, state.policy, anticipated,
                    shape ? la.opponent_jacobian : none, config, u, rng);
  Ascend(state.policy.theta, grad, config.alpha_theta);
  return la;
}

// --- Experiment-loop wrappers ---------------------------------------------

namespace {

class AcLearner : public Learner {
 public:
  AcLearner(LearnerConfig config, const Monfg& game, int agent, UtilityFn u)
      : Learner(std::move(config), game, agent, std::move(u)),
        state_(MakeAcState(game.num_actions(agent), game.num_objectives())),
        visible_(state_.policy) {}

  const PolicyParams& policy() const override { return visible_; }
  void Observe(const Experience& x) override {
    AcObserve(state_, x.own_action, x.payoff, config_.alpha_q);
  }
  void EndEpisode(Rng&) override { AcPolicyStep(state_, config_, utility_); }
  void Commit() override { visible_ = state_.policy; }

 private:
  AcState state_;
  PolicyParams visible_;
};

class AcomLearner : public Learner {
 public:
  AcomLearner(LearnerConfig config, const Monfg& game, int agent, UtilityFn u)
      : Learner(std::move(config), game, agent, std::move(u)),
        state_(MakeAcomState(game.num_actions(agent),
                             game.num_actions(1 - agent),
                             game.num_objectives(), config_)),
        visible_(state_.policy) {}

  const PolicyParams& policy() const override { return visible_; }
  void Observe(const Experience& x) override { episode_.push_back(x); }
  void EndEpisode(Rng&) override {
    AcomUpdate(state_, episode_, config_, utility_);
    episode_.clear();
  }
  void Commit() override { visible_ = state_.policy; }

 private:
  AcomState state_;
  PolicyParams visible_;
  std::vector<Experience> episode_;
};

class AcolamLearner : public Learner {
 public:
  AcolamLearner(LearnerConfig config, const Monfg& game, int agent,
                UtilityFn u)
      : Learner(std::move(config), game, agent, std::move(u)),
        state_(MakeAcolamState(game.num_actions(agent),
                               game.num_actions(1 - agent),
                               game.num_objectives(), config_)),
        visible_(state_.policy) {}

  const PolicyParams& policy() const override { return visible_; }
  void Observe(const Experience& x) override { episode_.push_back(x); }
  void EndEpisode(Rng&) override {
    AcolamUpdate(state_, episode_, config_, utility_);
    episode_.clear();
  }
  void Commit() override { visible_ = state_.policy; }

 private:
  AcolamState state_;
  PolicyParams visible_;
  std::vector<Experience> episode_;
};

class LolamLearner : public Learner {
 public:
  LolamLearner(LearnerConfig config, const Monfg& game, int agent, UtilityFn u)
      : Learner(std::move(config), game, agent, std::move(u)),
        state_(MakeLolamState(game.num_actions(agent),
                              game.num_actions(1 - agent), config_)),
        visible_(state_.policy) {}

  const PolicyParams& policy() const override { return visible_; }
  void Observe(const Experience& x) override {
    // The window holds one episode; keep the most recent interactions.
    if (state_.model.full()) state_.model.Reset();
    state_.model.Observe(x.opponent_action);
  }
  void EndEpisode(Rng& rng) override {
    LolamUpdate(state_, game_, agent_, config_, utility_, rng);
  }
  void Commit() override { visible_ = state_.policy; }

 private:
  LolamState state_;
  PolicyParams visible_;
};

}  // namespace

MoLolaLearner::MoLolaLearner(LearnerConfig config, const Monfg& game,
                             int agent, UtilityFn utility)
    : Learner(std::move(config), game, agent, std::move(utility)),
      policy_(PolicyParams::Uniform(PolicyKind::kSigmoid,
                                  game.num_actions(agent))) {}

void MoLolaLearner::EndEpisode(Rng& rng) {
  if (opponent_ == nullptr) {
    throw ConfigError("MO-LOLA needs a full-information opponent");
  }
  const FullInformationView view{game_,     agent_,   policy_,
                                 opponent_->policy(), utility_,
                                 opponent_->utility()};
  pending_ = MoLolaUpdate(view, config_, rng);
}

void MoLolaLearner::Commit() {
  if (!pending_.empty()) policy_.theta = std::move(pending_);
  pending_.clear();
}

std::unique_ptr<Learner> Learner::Create(const LearnerConfig& config,
                                         const Monfg& game, int agent,
                                         UtilityFn utility) {
  config.Validate();
  if (game.num_agents() != 2) {
    throw InvalidArgument("learners play two-agent games");
  }
  if (agent != 0 && agent != 1) throw InvalidArgument("agent must be 0 or 1");
  switch (config.algorithm) {
    case Algorithm::kAc:
      return std::make_unique<AcLearner>(config, game, agent,
                                         std::move(utility));
    case Algorithm::kAcom:
      return std::make_unique<AcomLearner>(config, game, agent,
                                           std::move(utility));
    case Algorithm::kAcolam:
      return std::make_unique<AcolamLearner>(config, game, agent,
                                             std::move(utility));
    case Algorithm::kMoLola:
      return std::make_unique<MoLolaLearner>(config, game, agent,
                                             std::move(utility));
    case Algorithm::kLolam:
      return std::make_unique<LolamLearner>(config, game, agent,
                                            std::move(utility));
  }
  throw InvalidArgument("unknown algorithm");
}

}  // namespace monfg
