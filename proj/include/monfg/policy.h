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

#ifndef MONFG_POLICY_H_
#define MONFG_POLICY_H_

#include <random>
#include <span>
#include <string>
#include <vector>

#include "monfg/autodiff.h"

namespace monfg {

using Rng = std::mt19937_64;

// Softmax: one logit per action.
// Sigmoid: |A|-1 parameters forming a stick-breaking chain,
//   P(a_1) = s(t_1), P(a_2) = (1 - s(t_1)) s(t_2), ..., P(a_n) = remainder,
// which is the plain sigmoid policy when |A| = 2.
enum class PolicyKind { kSoftmax, kSigmoid };

std::string ToString(PolicyKind kind);
int NumPolicyParams(PolicyKind kind, int num_actions);

struct PolicyParams {
  PolicyKind kind = PolicyKind::kSoftmax;
  int num_actions = 0;
  std::vector<double> theta;

  // All-zero parameters; uniform for softmax, and for sigmoid when |A| = 2.
  static PolicyParams Zeros(PolicyKind kind, int num_actions);
  // Parameters of the uniform policy. Zeros for softmax; for the sigmoid
  // chain theta_k = -log(|A| - k - 1), the logit of 1 / (|A| - k).
  static PolicyParams Uniform(PolicyKind kind, int num_actions);
};

// Throws NumericDomainError on non-finite theta and InvalidArgument on a
// theta whose size does not match the kind.
std::vector<double> Probabilities(const PolicyParams& p);

int SampleAction(const PolicyParams& p, Rng& rng);
int SampleFromProbabilities(std::span<const double> probs, Rng& rng);

// d/dtheta log pi(action | theta).
std::vector<double> GradLogProb(const PolicyParams& p, int action);

// Jacobian d pi(a) / d theta_j as rows indexed by action.
std::vector<std::vector<double>> GradProbabilities(const PolicyParams& p);

// Log-probabilities of every action as graph expressions of `theta`.
std::vector<ad::Var> LogProbabilities(PolicyKind kind, int num_actions,
                                      std::span<const ad::Var> theta);

}  // namespace monfg

#endif  // MONFG_POLICY_H_
