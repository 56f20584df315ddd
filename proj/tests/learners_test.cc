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

#include <cmath>
#include <random>

#include "doctest.h"
#include "monfg/dice.h"
#include "monfg/errors.h"
#include "monfg/learners.h"
#include "test_util.h"

namespace monfg {
namespace {

std::vector<double> RandomVec(Rng& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

MoQTable RandomJointTable(Rng& rng, int n1, int n2) {
  auto q = MoQTable::JointAction(n1, n2, 2);
  for (int a = 0; a < n1; ++a) {
    for (int b = 0; b < n2; ++b) q.Update(a, b, RandomVec(rng, 2, 0.1, 5), 1.0);
  }
  return q;
}

// Experiences of a 100-interaction window in which the opponent always
// plays `opp` and the learner alternates over its actions.
std::vector<Experience> Window(const Monfg& game, int agent, int opp) {
  std::vector<Experience> out;
  for (int i = 0; i < 100; ++i) {
    const int own = i % game.num_actions(agent);
    const int a1 = agent == 0 ? own : opp, a2 = agent == 0 ? opp : own;
    const auto p = game.Payoff(agent, a1, a2);
    out.push_back({own, opp, PayoffVector(p.begin(), p.end())});
  }
  return out;
}

TEST_CASE("defaults") {
  const auto ac = LearnerConfig::Defaults(Algorithm::kAc);
  CHECK(ac.alpha_theta == 0.05);
  CHECK(ac.alpha_q == 0.05);
  const auto acom = LearnerConfig::Defaults(Algorithm::kAcom);
  CHECK(acom.alpha_q == 1.0);
  const auto acolam = LearnerConfig::Defaults(Algorithm::kAcolam);
  CHECK(acolam.alpha_in == 0.05);
  for (auto alg : {Algorithm::kMoLola, Algorithm::kLolam}) {
    const auto c = LearnerConfig::Defaults(alg, 2);
    CHECK(c.alpha_theta == 0.1);
    CHECK(c.alpha_in == 0.2);
    CHECK(c.lookahead == 2);
    CHECK(c.policy_kind() == PolicyKind::kSigmoid);
  }
  CHECK(ac.gamma == 1.0);
  CHECK(ac.history == 50);
  CHECK(ac.window == 100);
  CHECK(ac.shape_through_gp);
  CHECK(ParseAlgorithm("MO-LOLA") == Algorithm::kMoLola);
  CHECK(ParseAlgorithm("lola") == Algorithm::kMoLola);
  CHECK(ParseAlgorithm("acolam") == Algorithm::kAcolam);
  CHECK_THROWS_AS(ParseAlgorithm("sarsa"), InvalidArgument);
  auto bad = ac;
  bad.alpha_theta = -1;
  CHECK_THROWS_AS(bad.Validate(), InvalidArgument);
  bad = ac;
  bad.lookahead = -1;
  CHECK_THROWS_AS(bad.Validate(), InvalidArgument);
}

TEST_CASE("AC objective gradient matches finite differences") {
  Rng rng(1);
  for (int i = 0; i < 60; ++i) {
    const int n = 2 + i % 2;
    const PolicyParams pp{PolicyKind::kSoftmax, n, RandomVec(rng, n, -2, 2)};
    std::vector<std::vector<double>> v;
    for (int a = 0; a < n; ++a) v.push_back(RandomVec(rng, 2, 0.1, 5));
    const auto& u = i % 2 ? RowUtility() : ColumnUtility();
    const auto fd = testing::NumericGradient(
        [&](const std::vector<double>& t) {
          return SerObjective({pp.kind, n, t}, v, u);
        },
        pp.theta);
    CHECK(testing::RelativeError(SerObjectiveGradient(pp, v, u), fd) <= 1e-6);
  }
}

TEST_CASE("ACOM objective gradients match finite differences") {
  Rng rng(2);
  for (int i = 0; i < 60; ++i) {
    const int n1 = 2 + i % 2, n2 = 2 + (i / 2) % 2;
    const PolicyParams own{PolicyKind::kSoftmax, n1, RandomVec(rng, n1, -2, 2)};
    const PolicyParams opp{PolicyKind::kSoftmax, n2, RandomVec(rng, n2, -2, 2)};
    const auto q = RandomJointTable(rng, n1, n2);
    const auto& u = i % 3 ? RowUtility() : ColumnUtility();
    const auto obj = MarginalisedObjective(own, opp, q, u);
    const auto fd_own = testing::NumericGradient(
        [&](const std::vector<double>& t) {
          return MarginalisedObjective({own.kind, n1, t}, opp, q, u).value;
        },
        own.theta);
    const auto fd_opp = testing::NumericGradient(
        [&](const std::vector<double>& t) {
          return MarginalisedObjective(own, {opp.kind, n2, t}, q, u).value;
        },
        opp.theta);
    CHECK(testing::RelativeError(obj.own_gradient, fd_own) <= 1e-6);
    CHECK(testing::RelativeError(obj.opponent_gradient, fd_opp) <= 1e-6);
  }
}

TEST_CASE("AC updates") {
  const auto cfg = LearnerConfig::Defaults(Algorithm::kAc);
  auto s = MakeAcState(2, 2);
  AcPolicyStep(s, cfg, RowUtility());
  CHECK(s.policy.theta == std::vector<double>{0, 0});
  AcPolicyStep(s, cfg, ColumnUtility());
  CHECK(s.policy.theta == std::vector<double>{0, 0});

  auto frozen = cfg;
  frozen.alpha_theta = 0.0;
  const std::vector<double> p = {4, 0};
  AcUpdate(s, 0, p, frozen, RowUtility());
  CHECK(s.policy.theta == std::vector<double>{0, 0});
  CHECK(s.q.Value(0)[0] == doctest::Approx(0.2));

  // Rewarding action 0 pushes its logit up.
  AcUpdate(s, 0, p, cfg, RowUtility());
  CHECK(s.policy.theta[0] > s.policy.theta[1]);
}

TEST_CASE("ACOM update examples") {
  const auto g1 = GameCatalogue(1);
  const auto cfg = LearnerConfig::Defaults(Algorithm::kAcom);
  auto s = MakeAcomState(2, 2, 2, cfg);
  // Opponent always M: the reduced objective prefers L since u1(3,1) = 10
  // beats u1(2,2) = 8.
  const auto episode = Window(g1, 0, 1);
  AcomUpdate(s, episode, cfg, RowUtility());
  CHECK(s.policy.theta[0] > s.policy.theta[1]);
  CHECK(s.model.total() == 0);
  CHECK_THROWS_AS(AcomUpdate(s, std::span<const Experience>(), cfg, RowUtility()),
                  InvalidArgument);

  // Identical rows of Q and a uniform opponent: no gradient.
  auto q = MoQTable::JointAction(2, 2, 2);
  const std::vector<double> a = {1, 3}, b = {2, 0.5};
  for (int own = 0; own < 2; ++own) {
    q.Update(own, 0, a, 1.0);
    q.Update(own, 1, b, 1.0);
  }
  const auto obj = MarginalisedObjective(PolicyParams::Zeros(PolicyKind::kSoftmax, 2),
                                         PolicyParams::Zeros(PolicyKind::kSoftmax, 2),
                                         q, RowUtility());
  for (double g : obj.own_gradient) CHECK(std::abs(g) <= 1e-12);
}

TEST_CASE("ACOLAM reduces to ACOM without lookahead") {
  const auto g2 = GameCatalogue(2);
  auto cfg = LearnerConfig::Defaults(Algorithm::kAcolam, 0);
  auto acom_cfg = LearnerConfig::Defaults(Algorithm::kAcom);
  auto a = MakeAcolamState(2, 2, 2, cfg);
  auto b = MakeAcomState(2, 2, 2, acom_cfg);
  for (int e = 0; e < 20; ++e) {
    const auto episode = Window(g2, 0, e % 3 == 0 ? 1 : 0);
    const auto la = AcolamUpdate(a, episode, cfg, RowUtility());
    AcomUpdate(b, episode, acom_cfg, RowUtility());
    CHECK_FALSE(la.used_gp);
    CHECK(a.policy.theta == b.policy.theta);
  }
}

TEST_CASE("zero steps leave the estimate in place") {
  StepHistory h(50);
  for (int i = 0; i < 10; ++i) {
    h.Push({0.1 * i, -0.1 * i}, {0.05 * i, 0.0}, {0.0, 0.0});
  }
  auto cfg = LearnerConfig::Defaults(Algorithm::kAcolam, 3);
  Kernel k;
  double noise = 0.0;
  const std::vector<double> own = {0.2, -0.2}, est = {0.3, -0.3};
  const auto la = GpLookahead(h, own, est, cfg, k, noise);
  CHECK(la.used_gp);
  CHECK(la.opponent_theta == est);
  CHECK(la.opponent_jacobian.norm() == 0.0);
}

TEST_CASE("lookahead falls back without enough history") {
  auto cfg = LearnerConfig::Defaults(Algorithm::kLolam, 2);
  StepHistory h(50);
  h.Push({0.0}, {0.0}, {1.0});
  Kernel k;
  double noise = 0.0;
  const std::vector<double> own = {0.0}, est = {0.5};
  const auto la = GpLookahead(h, own, est, cfg, k, noise);
  CHECK_FALSE(la.used_gp);
  CHECK(la.opponent_theta == est);
}

TEST_CASE("lookahead follows a consistent opponent drift") {
  // The opponent's logits have kept moving toward M in Game 1.
  StepHistory h(50);
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto own = RandomVec(rng, 2, -1, 1);
    const double m = 0.05 * i;
    h.Push(own, {-m, m}, {-1.0, 1.0});
  }
  const auto cfg = LearnerConfig::Defaults(Algorithm::kAcolam, 1);
  Kernel k;
  double noise = 0.0;
  const std::vector<double> own = {0.0, 0.0}, est = {-0.5, 0.5};
  const auto la = GpLookahead(h, own, est, cfg, k, noise);
  CHECK(la.used_gp);
  const auto before = Probabilities({PolicyKind::kSoftmax, 2, est});
  const auto after = Probabilities({PolicyKind::kSoftmax, 2, la.opponent_theta});
  CHECK(after[1] > before[1]);
}

TEST_CASE("lookahead escapes an over-fitted warm start on pure-noise steps") {
  // Steps carry no dependence on the inputs. A warm start with tiny noise
  // and floor length scales interpolates them and reports steep slopes.
  auto cfg = LearnerConfig::Defaults(Algorithm::kLolam, 1);
  for (int seed = 1; seed <= 5; ++seed) {
    CAPTURE(seed);
    Rng rng(seed);
    std::uniform_real_distribution<double> own(2.0, 5.0), opp(-2.5, -1.5);
    std::normal_distribution<double> step(0.0, 1.5);
    StepHistory h(50);
    for (int i = 0; i < 50; ++i) h.Push({own(rng)}, {opp(rng)}, {step(rng)});
    Kernel k = Kernel::MultiTask(2, 1);
    k.length_scales.setConstant(cfg.gp_min_length_scale);
    k.task_factor(0, 0) = std::sqrt(300.0);
    double noise = 1e-4;
    const std::vector<double> th = {3.5}, est = {-2.0};
    const auto la = GpLookahead(h, th, est, cfg, k, noise);
    CHECK(la.used_gp);
    CHECK(std::abs(la.opponent_jacobian(0, 0)) <= 0.5);
    CHECK(noise >= 2.25 / 3);
    CHECK(noise <= 2.25 * 3);
  }
}

FullInformationView View(const Monfg& game, const PolicyParams& own,
                         const PolicyParams& opp) {
  static const UtilityFn u1 = RowUtility(), u2 = ColumnUtility();
  return FullInformationView{game, 0, own, opp, u1, u2};
}

TEST_CASE("MO-LOLA without lookahead is the plain DiCE gradient") {
  const auto g4 = GameCatalogue(4);
  const PolicyParams own{PolicyKind::kSigmoid, 2, {0.3}};
  const PolicyParams opp{PolicyKind::kSigmoid, 2, {-0.6}};
  auto cfg = LearnerConfig::Defaults(Algorithm::kMoLola, 0);
  Rng a(5), b(5);
  const auto g = MoLolaGradient(View(g4, own, opp), cfg, a);
  const auto plain = LolamGradient(g4, 0, own, opp, Eigen::MatrixXd(), cfg,
                                   RowUtility(), b);
  CHECK(testing::RelativeError(g, plain) <= 1e-12);

  // A zero inner rate leaves the opponent where it is; only the inner
  // batch's draws differ, so replay them.
  cfg = LearnerConfig::Defaults(Algorithm::kMoLola, 1);
  cfg.alpha_in = 0.0;
  Rng c(6), d(6);
  const auto g0 = MoLolaGradient(View(g4, own, opp), cfg, c);
  SampleRollouts(g4, own, opp, cfg.rollout_length, cfg.rollout_batch, d);
  const auto naive =
      LolamGradient(g4, 0, own, opp, Eigen::MatrixXd(), cfg, RowUtility(), d);
  CHECK(testing::RelativeError(g0, naive) <= 1e-12);
}

TEST_CASE("MO-LOLA shaping term is proportional to the inner rate") {
  const auto g4 = GameCatalogue(4);
  const PolicyParams own{PolicyKind::kSigmoid, 2, {0.8}};
  const PolicyParams opp{PolicyKind::kSigmoid, 2, {-0.5}};
  auto cfg = LearnerConfig::Defaults(Algorithm::kMoLola, 1);
  cfg.rollout_batch = 4096;
  auto grad_at = [&](double alpha_in) {
    auto c = cfg;
    c.alpha_in = alpha_in;
    Rng rng(77);
    return MoLolaGradient(View(g4, own, opp), c, rng)[0];
  };
  const double h = 1e-4;
  const double slope = (grad_at(h) - grad_at(-h)) / (2 * h);
  CHECK(std::abs(slope) > 1e-3);
  // Linear near zero.
  CHECK(grad_at(2 * h) - grad_at(0) ==
        doctest::Approx(2 * (grad_at(h) - grad_at(0))).epsilon(1e-3));
}

TEST_CASE("LOLAM gradient adds the Jacobian term") {
  const auto g4 = GameCatalogue(4);
  const PolicyParams own{PolicyKind::kSigmoid, 2, {0.2}};
  const PolicyParams opp{PolicyKind::kSigmoid, 2, {0.4}};
  const auto cfg = LearnerConfig::Defaults(Algorithm::kLolam, 1);
  Rng a(3), b(3);
  const auto plain =
      LolamGradient(g4, 0, own, opp, Eigen::MatrixXd(), cfg, RowUtility(), a);
  const auto zero = LolamGradient(g4, 0, own, opp, Eigen::MatrixXd::Zero(1, 1),
                                  cfg, RowUtility(), b);
  CHECK(plain == zero);
  CHECK_THROWS_AS(LolamGradient(g4, 0, own, opp, Eigen::MatrixXd::Zero(2, 2),
                                cfg, RowUtility(), b),
                  InvalidArgument);
}

TEST_CASE("learners expose only their own policy") {
  const auto g = GameCatalogue(2);
  for (auto alg : {Algorithm::kAc, Algorithm::kAcom, Algorithm::kAcolam,
                   Algorithm::kLolam}) {
    auto l = Learner::Create(LearnerConfig::Defaults(alg), g, 1, ColumnUtility());
    CHECK(dynamic_cast<MoLolaLearner*>(l.get()) == nullptr);
    CHECK(l->agent() == 1);
    const auto p = Probabilities(l->policy());
    CHECK(p.size() == 2);
    CHECK(p[0] == doctest::Approx(0.5));
  }
  auto ml = Learner::Create(LearnerConfig::Defaults(Algorithm::kMoLola),
                            GameCatalogue(3), 0, RowUtility());
  for (double x : Probabilities(ml->policy())) {
    CHECK(x == doctest::Approx(1.0 / 3));
  }
}

TEST_CASE("updates become visible only on commit") {
  const auto g = GameCatalogue(1);
  auto l = Learner::Create(LearnerConfig::Defaults(Algorithm::kAcom), g, 0,
                           RowUtility());
  Rng rng(1);
  for (const auto& x : Window(g, 0, 1)) l->Observe(x);
  l->EndEpisode(rng);
  CHECK(l->policy().theta == std::vector<double>{0, 0});
  l->Commit();
  CHECK(l->policy().theta[0] > 0.0);
}

}  // namespace
}  // namespace monfg
