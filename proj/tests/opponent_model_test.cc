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

#include "doctest.h"
#include "monfg/errors.h"
#include "monfg/opponent_model.h"

namespace monfg {
namespace {

TEST_CASE("frequency estimates") {
  FrequencyModel m(2, 100, PolicyKind::kSoftmax);
  CHECK_THROWS_AS(m.EstimatePolicy(), EmptyWindowError);
  for (int i = 0; i < 75; ++i) m.Observe(0);
  for (int i = 0; i < 25; ++i) m.Observe(1);
  CHECK(m.EstimatePolicy() == std::vector<double>{0.75, 0.25});
  CHECK(m.full());
  CHECK_THROWS(m.Observe(0));

  m.Reset();
  CHECK(m.total() == 0);
  m.Observe(1);
  // Exact ratio would be (0, 1); smoothing keeps it invertible.
  const auto p = m.EstimatePolicy(0.0);
  CHECK(p[1] == 1.0);

  FrequencyModel s(2, 100, PolicyKind::kSoftmax);
  for (int i = 0; i < 100; ++i) s.Observe(0);
  const auto q = s.EstimatePolicy(0.1);
  CHECK(q[0] == doctest::Approx(100.1 / 100.2));
  CHECK(q[1] == doctest::Approx(0.1 / 100.2));

  FrequencyModel t(3, 100, PolicyKind::kSoftmax);
  for (int a = 0; a < 3; ++a) t.Observe(a);
  for (double x : t.EstimatePolicy()) CHECK(x == doctest::Approx(1.0 / 3));
}

TEST_CASE("window holds only the current window's counts") {
  FrequencyModel m(2, 10, PolicyKind::kSoftmax);
  for (int i = 0; i < 10; ++i) m.Observe(0);
  m.Reset();
  for (int i = 0; i < 4; ++i) m.Observe(1);
  for (int i = 0; i < 6; ++i) m.Observe(0);
  CHECK(m.EstimatePolicy() == std::vector<double>{0.6, 0.4});
}

TEST_CASE("parameter inversion") {
  const std::vector<double> half = {0.5, 0.5};
  CHECK(InvertToParams(half, PolicyKind::kSoftmax).theta ==
        std::vector<double>{0, 0});
  const std::vector<double> q = {0.75, 0.25};
  CHECK(InvertToParams(q, PolicyKind::kSigmoid).theta[0] ==
        doctest::Approx(std::log(3.0)));
  const std::vector<double> zero = {1.0, 0.0};
  CHECK_THROWS_AS(InvertToParams(zero, PolicyKind::kSoftmax), InvalidArgument);

  Rng rng(12);
  std::uniform_real_distribution<double> d(0.001, 1.0);
  for (auto kind : {PolicyKind::kSoftmax, PolicyKind::kSigmoid}) {
    for (int n = 2; n <= 4; ++n) {
      for (int i = 0; i < 100; ++i) {
        std::vector<double> p(n);
        double z = 0;
        for (auto& x : p) z += (x = d(rng));
        for (auto& x : p) x /= z;
        const auto theta = InvertToParams(p, kind);
        const auto back = Probabilities(theta);
        for (int a = 0; a < n; ++a) CHECK(std::abs(back[a] - p[a]) <= 1e-9);
        if (kind == PolicyKind::kSoftmax) {
          double mean = 0;
          for (double t : theta.theta) mean += t;
          CHECK(std::abs(mean) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("step estimate") {
  const std::vector<double> a = {0.1}, b = {0.2};
  CHECK(EstimateStep(a, b, 0.05)[0] == doctest::Approx(2.0));
  CHECK(EstimateStep(b, b, 0.05)[0] == 0.0);
  const std::vector<double> c = {0.1 + 3 * 0.1};
  CHECK(EstimateStep(a, c, 0.05)[0] ==
        doctest::Approx(3 * EstimateStep(a, b, 0.05)[0]));
  CHECK_THROWS_AS(EstimateStep(a, b, 0.0), InvalidArgument);
  CHECK_THROWS_AS(EstimateStep(a, b, -1.0), InvalidArgument);
  const std::vector<double> two = {0, 0};
  CHECK_THROWS_AS(EstimateStep(a, two, 0.1), InvalidArgument);
}

TEST_CASE("step history is a ring buffer") {
  StepHistory h(3);
  h.Push({1}, {1}, {1});
  CHECK(h.size() == 1);
  for (int i = 2; i <= 4; ++i) h.Push({double(i)}, {0}, {0});
  CHECK(h.size() == 3);
  CHECK(h[0].own_theta[0] == 2);
  CHECK(h[2].own_theta[0] == 4);
  CHECK(h[1].Input() == std::vector<double>{3, 0});
}

}  // namespace
}  // namespace monfg
