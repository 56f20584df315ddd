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

#include "monfg/critic.h"

#include "monfg/errors.h"

namespace monfg {

MoQTable::MoQTable(Scope scope, int num_own, int num_opp, int num_objectives)
    : scope_(scope),
      num_own_(num_own),
      num_opp_(num_opp),
      num_objectives_(num_objectives),
      values_(static_cast<std::size_t>(num_own) * num_opp * num_objectives,
              0.0) {
  if (num_own < 1 || num_opp < 1 || num_objectives < 1) {
    throw InvalidArgument("Q table dimensions must be positive");
  }
}

MoQTable MoQTable::OwnAction(int num_own_actions, int num_objectives) {
  return MoQTable(Scope::kOwnAction, num_own_actions, 1, num_objectives);
}

MoQTable MoQTable::JointAction(int num_own_actions, int num_opponent_actions,
                               int num_objectives) {
  return MoQTable(Scope::kJointAction, num_own_actions, num_opponent_actions,
                  num_objectives);
}

std::size_t MoQTable::Offset(int own, int opp) const {
  if (own < 0 || own >= num_own_ || opp < 0 || opp >= num_opp_) {
    throw InvalidArgument("Q table key out of range");
  }
  return (static_cast<std::size_t>(own) * num_opp_ + opp) * num_objectives_;
}

std::span<const double> MoQTable::Value(int own) const {
  if (scope_ != Scope::kOwnAction) {
    throw InvalidArgument("joint Q table needs an opponent action");
  }
  return {values_.data() + Offset(own, 0),
          static_cast<std::size_t>(num_objectives_)};
}

std::span<const double> MoQTable::Value(int own, int opp) const {
  if (scope_ != Scope::kJointAction) {
    throw InvalidArgument("own-action Q table takes no opponent action");
  }
  return {values_.data() + Offset(own, opp),
          static_cast<std::size_t>(num_objectives_)};
}

void MoQTable::Update(int own, std::optional<int> opp,
                      std::span<const double> payoff, double alpha) {
  if (static_cast<int>(payoff.size()) != num_objectives_) {
    throw InvalidArgument("payoff length does not match Q table objectives");
  }
  if (opp.has_value() != (scope_ == Scope::kJointAction)) {
    throw InvalidArgument("Q update key does not match table scope");
  }
  double* q = values_.data() + Offset(own, opp.value_or(0));
  for (int c = 0; c < num_objectives_; ++c) q[c] += alpha * (payoff[c] - q[c]);
}

std::vector<std::vector<double>> MoQTable::OwnActionValues(
    std::optional<std::span<const double>> opp) const {
  if (opp.has_value() != (scope_ == Scope::kJointAction)) {
    throw InvalidArgument("opponent policy must be given exactly for joint Q");
  }
  if (opp && static_cast<int>(opp->size()) != num_opp_) {
    throw InvalidArgument("opponent policy size does not match Q table");
  }
  std::vector<std::vector<double>> out(
      num_own_, std::vector<double>(num_objectives_, 0.0));
  for (int a = 0; a < num_own_; ++a) {
    for (int b = 0; b < num_opp_; ++b) {
      const double w = opp ? (*opp)[b] : 1.0;
      const double* q = values_.data() + Offset(a, b);
      for (int c = 0; c < num_objectives_; ++c) out[a][c] += w * q[c];
    }
  }
  return out;
}

std::vector<double> MoQTable::ExpectedReturnEstimate(
    std::span<const double> own,
    std::optional<std::span<const double>> opp) const {
  if (static_cast<int>(own.size()) != num_own_) {
    throw InvalidArgument("own policy size does not match Q table");
  }
  const auto per_action = OwnActionValues(opp);
  std::vector<double> total(num_objectives_, 0.0);
  for (int a = 0; a < num_own_; ++a) {
    for (int c = 0; c < num_objectives_; ++c) {
      total[c] += own[a] * per_action[a][c];
    }
  }
  return total;
}

}  // namespace monfg
