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

#include "monfg/policy.h"

#include <algorithm>
#include <cmath>

#include "monfg/errors.h"

namespace monfg {
namespace {

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void CheckParams(const PolicyParams& p) {
  if (p.num_actions < 1) throw InvalidArgument("policy needs an action");
  if (static_cast<int>(p.theta.size()) != NumPolicyParams(p.kind, p.num_actions)) {
    throw InvalidArgument("theta size does not match policy kind");
  }
  for (double t : p.theta) {
    if (!std::isfinite(t)) {
      throw NumericDomainError("policy parameters must be finite");
    }
  }
}

}  // namespace

std::string ToString(PolicyKind kind) {
  return kind == PolicyKind::kSoftmax ? "softmax" : "sigmoid";
}

int NumPolicyParams(PolicyKind kind, int num_actions) {
  return kind == PolicyKind::kSoftmax ? num_actions : num_actions - 1;
}

PolicyParams PolicyParams::Zeros(PolicyKind kind, int num_actions) {
  return PolicyParams{
      kind, num_actions,
      std::vector<double>(NumPolicyParams(kind, num_actions), 0.0)};
}

PolicyParams PolicyParams::Uniform(PolicyKind kind, int num_actions) {
  PolicyParams p = Zeros(kind, num_actions);
  if (kind == PolicyKind::kSigmoid) {
    for (int k = 0; k + 1 < num_actions; ++k) {
      p.theta[k] = -std::log(static_cast<double>(num_actions - k - 1));
    }
  }
  return p;
}

std::vector<double> Probabilities(const PolicyParams& p) {
  CheckParams(p);
  std::vector<double> probs(p.num_actions);
  if (p.kind == PolicyKind::kSoftmax) {
    const double max = *std::max_element(p.theta.begin(), p.theta.end());
    double total = 0.0;
    for (int a = 0; a < p.num_actions; ++a) {
      probs[a] = std::exp(p.theta[a] - max);
      total += probs[a];
    }
    for (double& v : probs) v /= total;
    return probs;
  }
  double remaining = 1.0;
  for (int a = 0; a + 1 < p.num_actions; ++a) {
    probs[a] = remaining * Sigmoid(p.theta[a]);
    remaining *= Sigmoid(-p.theta[a]);
  }
  probs.back() = remaining;
  return probs;
}

int SampleFromProbabilities(std::span<const double> probs, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double draw = unit(rng);
  double cumulative = 0.0;
  for (std::size_t a = 0; a + 1 < probs.size(); ++a) {
    cumulative += probs[a];
    if (draw < cumulative) return static_cast<int>(a);
  }
  return static_cast<int>(probs.size()) - 1;
}

int SampleAction(const PolicyParams& p, Rng& rng) {
  const auto probs = Probabilities(p);
  return SampleFromProbabilities(probs, rng);
}

std::vector<double> GradLogProb(const PolicyParams& p, int action) {
  if (action < 0 || action >= p.num_actions) {
    throw InvalidArgument("action index out of range");
  }
  std::vector<double> grad(p.theta.size(), 0.0);
  if (p.kind == PolicyKind::kSoftmax) {
    const auto probs = Probabilities(p);
    for (int j = 0; j < p.num_actions; ++j) {
      grad[j] = (j == action ? 1.0 : 0.0) - probs[j];
    }
    return grad;
  }
  CheckParams(p);
  // log P(a_k) = sum_{j<k} log(1 - s(t_j)) + [k < n-1] log s(t_k).
  for (int j = 0; j < action && j + 1 < p.num_actions; ++j) {
    grad[j] = -Sigmoid(p.theta[j]);
  }
  if (action + 1 < p.num_actions) grad[action] = Sigmoid(-p.theta[action]);
  return grad;
}

std::vector<std::vector<double>> GradProbabilities(const PolicyParams& p) {
  const auto probs = Probabilities(p);
  std::vector<std::vector<double>> jac(p.num_actions);
  for (int a = 0; a < p.num_actions; ++a) {
    jac[a] = GradLogProb(p, a);
    for (double& v : jac[a]) v *= probs[a];
  }
  return jac;
}

std::vector<ad::Var> LogProbabilities(PolicyKind kind, int num_actions,
                                      std::span<const ad::Var> theta) {
  if (static_cast<int>(theta.size()) != NumPolicyParams(kind, num_actions)) {
    throw InvalidArgument("theta size does not match policy kind");
  }
  std::vector<ad::Var> out;
  out.reserve(num_actions);
  if (kind == PolicyKind::kSoftmax) {
    ad::Graph& g = *theta[0].graph();
    double max = theta[0].value();
    for (const auto& t : theta) max = std::max(max, t.value());
    // The shift cancels exactly, so holding it constant keeps every
    // derivative intact while avoiding overflow.
    const ad::Var shift = g.Constant(max);
    std::vector<ad::Var> exps;
    for (const auto& t : theta) exps.push_back(ad::Exp(t - shift));
    const ad::Var log_norm = shift + ad::Log(ad::Sum(g, exps));
    for (const auto& t : theta) out.push_back(t - log_norm);
    return out;
  }
  if (num_actions < 2) {
    throw InvalidArgument("sigmoid policy needs at least 2 actions");
  }
  ad::Var prefix;  // sum_{j<k} log(1 - s(t_j))
  for (int k = 0; k + 1 < num_actions; ++k) {
    // log s(t) = -softplus(-t), log(1 - s(t)) = -softplus(t).
    const ad::Var log_here = -ad::Softplus(-theta[k]);
    out.push_back(k == 0 ? log_here : prefix + log_here);
    const ad::Var log_rest = -ad::Softplus(theta[k]);
    prefix = k == 0 ? log_rest : prefix + log_rest;
  }
  out.push_back(prefix);
  return out;
}

}  // namespace monfg
