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
#include <limits>

#include "doctest.h"
#include "monfg/errors.h"
#include "monfg/policy.h"
#include "test_util.h"

namespace monfg {
namespace {

std::vector<double> RandomTheta(Rng& rng, int n) {
  std::normal_distribution<double> d(0.0, 1.5);
  std::vector<double> t(n);
  for (auto& x : t) x = d(rng);
  return t;
}

TEST_CASE("probability examples") {
  CHECK(Probabilities({PolicyKind::kSoftmax, 2, {0, 0}}) ==
        std::vector<double>{0.5, 0.5});
  const auto p = Probabilities({PolicyKind::kSoftmax, 2, {std::log(3.0), 0}});
  CHECK(p[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(Probabilities({PolicyKind::kSigmoid, 2, {0}}) ==
        std::vector<double>{0.5, 0.5});
  const auto u3 = Probabilities(PolicyParams::Uniform(PolicyKind::kSigmoid, 3));
  for (double x : u3) CHECK(x == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK_THROWS_AS(
      Probabilities({PolicyKind::kSoftmax, 2,
                     {std::numeric_limits<double>::quiet_NaN(), 0}}),
      NumericDomainError);
  CHECK_THROWS_AS(Probabilities({PolicyKind::kSigmoid, 3, {0}}),
                  InvalidArgument);
}

TEST_CASE("probabilities are valid and softmax is translation invariant") {
  Rng rng(1);
  for (auto kind : {PolicyKind::kSoftmax, PolicyKind::kSigmoid}) {
    for (int n = 2; n <= 4; ++n) {
      for (int i = 0; i < 50; ++i) {
        const PolicyParams pp{kind, n,
                              RandomTheta(rng, NumPolicyParams(kind, n))};
        const auto p = Probabilities(pp);
        double s = 0;
        for (double x : p) {
          CHECK(x > 0.0);
          s += x;
        }
        CHECK(std::abs(s - 1.0) <= 1e-12);
        if (kind == PolicyKind::kSoftmax) {
          auto shifted = pp;
          for (auto& t : shifted.theta) t += 3.7;
          const auto q = Probabilities(shifted);
          for (int a = 0; a < n; ++a) CHECK(std::abs(p[a] - q[a]) <= 1e-12);
        }
      }
    }
  }
  // Saturated logits stay finite.
  const auto p = Probabilities({PolicyKind::kSoftmax, 2, {800, 0}});
  CHECK(p[0] == 1.0);
}

TEST_CASE("sampling") {
  Rng rng(42);
  const PolicyParams hard{PolicyKind::kSoftmax, 2, {50, 0}};
  int zeros = 0;
  for (int i = 0; i < 10000; ++i) zeros += SampleAction(hard, rng) == 0;
  CHECK(zeros / 1e4 > 0.999);

  const PolicyParams even{PolicyKind::kSoftmax, 2, {0, 0}};
  int ones = 0;
  for (int i = 0; i < 100000; ++i) ones += SampleAction(even, rng);
  CHECK(std::abs(ones / 1e5 - 0.5) <= 0.01);

  Rng a(9), b(9);
  for (int i = 0; i < 1000; ++i) {
    CHECK(SampleAction(even, a) == SampleAction(even, b));
  }
}

TEST_CASE("score function") {
  const PolicyParams z{PolicyKind::kSoftmax, 2, {0, 0}};
  CHECK(GradLogProb(z, 0) == std::vector<double>{0.5, -0.5});
  CHECK(GradProbabilities(z)[0][0] == doctest::Approx(0.25));

  Rng rng(2);
  for (auto kind : {PolicyKind::kSoftmax, PolicyKind::kSigmoid}) {
    for (int n = 2; n <= 4; ++n) {
      for (int i = 0; i < 30; ++i) {
        const PolicyParams pp{kind, n,
                              RandomTheta(rng, NumPolicyParams(kind, n))};
        const auto probs = Probabilities(pp);
        const auto jac = GradProbabilities(pp);
        std::vector<double> score_mean(pp.theta.size(), 0.0);
        std::vector<double> col_sum(pp.theta.size(), 0.0);
        for (int a = 0; a < n; ++a) {
          const auto g = GradLogProb(pp, a);
          const auto fd = testing::NumericGradient(
              [&](const std::vector<double>& t) {
                return std::log(Probabilities({kind, n, t})[a]);
              },
              pp.theta);
          CHECK(testing::RelativeError(g, fd, 1e-4) <= 1e-6);
          const auto fdp = testing::NumericGradient(
              [&](const std::vector<double>& t) {
                return Probabilities({kind, n, t})[a];
              },
              pp.theta);
          CHECK(testing::RelativeError(jac[a], fdp, 1e-4) <= 1e-6);
          for (std::size_t j = 0; j < g.size(); ++j) {
            score_mean[j] += probs[a] * g[j];
            col_sum[j] += jac[a][j];
            CHECK(jac[a][j] == doctest::Approx(probs[a] * g[j]).epsilon(1e-9));
          }
        }
        for (double x : score_mean) CHECK(std::abs(x) <= 1e-12);
        for (double x : col_sum) CHECK(std::abs(x) <= 1e-12);
      }
    }
  }
}

TEST_CASE("graph log-probabilities agree with the closed forms") {
  Rng rng(4);
  for (auto kind : {PolicyKind::kSoftmax, PolicyKind::kSigmoid}) {
    for (int n = 2; n <= 3; ++n) {
      const PolicyParams pp{kind, n, RandomTheta(rng, NumPolicyParams(kind, n))};
      ad::Graph g;
      const auto theta = g.Parameters(pp.theta);
      const auto lp = LogProbabilities(kind, n, theta);
      const auto probs = Probabilities(pp);
      for (int a = 0; a < n; ++a) {
        CHECK(lp[a].value() == doctest::Approx(std::log(probs[a])));
        const auto grad = g.values(g.Grad(lp[a], theta));
        CHECK(testing::RelativeError(grad, GradLogProb(pp, a)) <= 1e-10);
      }
    }
  }
}

}  // namespace
}  // namespace monfg
