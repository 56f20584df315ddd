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

#include "monfg/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "monfg/errors.h"

namespace monfg {
namespace {

// v_a: expected payoff vector of `agent` playing a against `opponent`.
std::vector<PayoffVector> ActionValues(const Monfg& game, int agent,
                                       const ProbabilityVector& opponent) {
  const int n = game.num_actions(agent);
  const int m = game.num_actions(1 - agent);
  if (static_cast<int>(opponent.size()) != m) {
    throw InvalidArgument("opponent strategy has the wrong size");
  }
  std::vector<PayoffVector> v(n, PayoffVector(game.num_objectives(), 0.0));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < m; ++b) {
      if (opponent[b] == 0.0) continue;
      const auto p = agent == 0 ? game.Payoff(0, a, b) : game.Payoff(1, b, a);
      for (std::size_t c = 0; c < p.size(); ++c) v[a][c] += opponent[b] * p[c];
    }
  }
  return v;
}

double Ser(const std::vector<PayoffVector>& v, const ProbabilityVector& s,
           const UtilityFn& u) {
  PayoffVector mix(v.front().size(), 0.0);
  for (std::size_t a = 0; a < v.size(); ++a) {
    if (s[a] == 0.0) continue;
    for (std::size_t c = 0; c < mix.size(); ++c) mix[c] += s[a] * v[a][c];
  }
  return u.Eval(mix);
}

void CheckAgent(const Monfg& game, int agent) {
  if (game.num_agents() != 2) {
    throw InvalidArgument("equilibrium tools need a two-agent game");
  }
  if (agent != 0 && agent != 1) throw InvalidArgument("agent must be 0 or 1");
}

}  // namespace

BestResponse BestResponseValue(const Monfg& game,
                               const ProbabilityVector& opponent_strategy,
                               int agent, const UtilityFn& u,
                               double resolution) {
  CheckAgent(game, agent);
  if (!(resolution > 0.0 && resolution <= 0.5)) {
    throw InvalidArgument("resolution must lie in (0, 0.5]");
  }
  const auto v = ActionValues(game, agent, opponent_strategy);
  const int n = static_cast<int>(v.size());
  const int steps = static_cast<int>(std::ceil(1.0 / resolution - 1e-9));

  BestResponse best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<int> counts(n, 0);
  ProbabilityVector s(n, 0.0);
  // Every composition of `steps` into n nonnegative parts.
  std::function<void(int, int)> visit = [&](int i, int left) {
    if (i == n - 1) {
      counts[i] = left;
      for (int a = 0; a < n; ++a) s[a] = static_cast<double>(counts[a]) / steps;
      const double value = Ser(v, s, u);
      if (value > best.value) {
        best.value = value;
        best.strategy = s;
      }
      return;
    }
    for (int k = 0; k <= left; ++k) {
      counts[i] = k;
      visit(i + 1, left - k);
    }
  };
  visit(0, steps);

  double h = 1.0 / steps;
  for (int r = 0; r < kRefinementHalvings; ++r) {
    h *= 0.5;
    bool improved = true;
    for (int guard = 0; improved && guard < 64; ++guard) {
      improved = false;
      for (int from = 0; from < n; ++from) {
        for (int to = 0; to < n; ++to) {
          if (from == to || best.strategy[from] <= 0.0) continue;
          ProbabilityVector t = best.strategy;
          const double shift = std::min(h, t[from]);
          t[from] -= shift;
          t[to] += shift;
          const double value = Ser(v, t, u);
          if (value > best.value + 1e-15) {
            best.value = value;
            best.strategy = std::move(t);
            improved = true;
          }
        }
      }
    }
  }
  return best;
}

NeCertificate VerifyNe(const Monfg& game, const MixedStrategyProfile& profile,
                       const std::vector<UtilityFn>& utilities,
                       double tolerance, double resolution) {
  CheckAgent(game, 0);
  ValidateProfile(game, profile);
  if (utilities.size() != 2) throw InvalidArgument("need two utilities");
  if (!(tolerance >= 0.0)) throw InvalidArgument("tolerance must be >= 0");
  NeCertificate cert;
  cert.profile = profile;
  cert.is_pure = profile.IsPure();
  cert.search_resolution = resolution;
  cert.tolerance = tolerance;
  for (int agent = 0; agent < 2; ++agent) {
    const auto& own = profile.strategies[agent];
    const auto& opp = profile.strategies[1 - agent];
    const auto v = ActionValues(game, agent, opp);
    const double current = Ser(v, own, utilities[agent]);
    const auto br =
        BestResponseValue(game, opp, agent, utilities[agent], resolution);
    cert.epsilon = std::max(cert.epsilon, br.value - current);
  }
  return cert;
}

std::vector<JointAction> EnumeratePureNe(
    const Monfg& game, const std::vector<UtilityFn>& utilities,
    DeviationSet deviations) {
  CheckAgent(game, 0);
  if (utilities.size() != 2) throw InvalidArgument("need two utilities");
  std::vector<JointAction> out;
  for (int flat = 0; flat < game.num_joint_actions(); ++flat) {
    const JointAction joint = game.Unflatten(flat);
    bool stable = true;
    for (int agent = 0; agent < 2 && stable; ++agent) {
      const int own = joint[agent];
      const int opp = joint[1 - agent];
      auto payoff = [&](int a) {
        return agent == 0 ? game.Payoff(0, a, opp) : game.Payoff(1, opp, a);
      };
      const double current = utilities[agent].Eval(payoff(own));
      for (int a = 0; a < game.num_actions(agent) && stable; ++a) {
        if (a != own && utilities[agent].Eval(payoff(a)) > current) {
          stable = false;
        }
      }
      if (stable && deviations == DeviationSet::kMixed) {
        ProbabilityVector point(game.num_actions(1 - agent), 0.0);
        point[opp] = 1.0;
        const auto br = BestResponseValue(game, point, agent,
                                          utilities[agent], kDefaultResolution);
        if (br.value > current + 1e-9) stable = false;
      }
    }
    if (stable) out.push_back(joint);
  }
  return out;
}

double OutcomeProximity(const OutcomeDistribution& dist,
                        const OutcomeDistribution& reference) {
  if (dist.rows != reference.rows || dist.cols != reference.cols ||
      dist.frequencies.size() != reference.frequencies.size()) {
    throw InvalidArgument("outcome distributions have different shapes");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < dist.frequencies.size(); ++i) {
    sum += std::abs(dist.frequencies[i] - reference.frequencies[i]);
  }
  return 0.5 * sum;
}

OutcomeDistribution OutcomeDistribution::Zeros(int rows, int cols) {
  if (rows < 1 || cols < 1) throw InvalidArgument("empty outcome matrix");
  OutcomeDistribution d;
  d.rows = rows;
  d.cols = cols;
  d.frequencies.assign(static_cast<std::size_t>(rows) * cols, 0.0);
  return d;
}

OutcomeDistribution OutcomeDistribution::PointMass(int rows, int cols, int a1,
                                                   int a2) {
  auto d = Zeros(rows, cols);
  if (a1 < 0 || a1 >= rows || a2 < 0 || a2 >= cols) {
    throw InvalidArgument("joint action outside the matrix");
  }
  d.At(a1, a2) = 1.0;
  return d;
}

double OutcomeDistribution::Mass(
    const std::vector<std::pair<int, int>>& cells) const {
  double m = 0.0;
  for (const auto& [a1, a2] : cells) m += At(a1, a2);
  return m;
}

double OutcomeDistribution::Total() const {
  double t = 0.0;
  for (double f : frequencies) t += f;
  return t;
}

}  // namespace monfg
