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

#include "monfg/opponent_model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "monfg/errors.h"

namespace monfg {

FrequencyModel::FrequencyModel(int num_opponent_actions, int window,
                               PolicyKind assumed_kind)
    : window_(window),
      assumed_kind_(assumed_kind),
      counts_(num_opponent_actions, 0) {
  if (num_opponent_actions < 1) {
    throw InvalidArgument("opponent needs at least one action");
  }
  if (window < 1) throw InvalidArgument("estimation window must be >= 1");
}

void FrequencyModel::Observe(int opponent_action) {
  if (opponent_action < 0 ||
      opponent_action >= static_cast<int>(counts_.size())) {
    throw InvalidArgument("opponent action out of range");
  }
  if (full()) throw std::logic_error("estimation window is already full");
  ++counts_[opponent_action];
  ++total_;
}

void FrequencyModel::Reset() {
  std::fill(counts_.begin(), counts_.end(), 0);
  total_ = 0;
}

std::vector<double> FrequencyModel::EstimatePolicy(double smoothing) const {
  if (total_ == 0) {
    throw EmptyWindowError("no opponent actions observed in this window");
  }
  const bool any_zero =
      std::find(counts_.begin(), counts_.end(), 0) != counts_.end();
  const double extra = any_zero ? smoothing : 0.0;
  const double denom = total_ + extra * static_cast<double>(counts_.size());
  std::vector<double> probs(counts_.size());
  for (std::size_t a = 0; a < counts_.size(); ++a) {
    probs[a] = (counts_[a] + extra) / denom;
  }
  return probs;
}

PolicyParams InvertToParams(std::span<const double> probs, PolicyKind kind) {
  const int n = static_cast<int>(probs.size());
  if (n < 1) throw InvalidArgument("empty probability vector");
  for (double p : probs) {
    if (!(p > 0.0)) {
      throw InvalidArgument("cannot invert a policy with a zero probability");
    }
  }
  PolicyParams out = PolicyParams::Zeros(kind, n);
  if (kind == PolicyKind::kSoftmax) {
    double mean = 0.0;
    for (int a = 0; a < n; ++a) {
      out.theta[a] = std::log(probs[a]);
      mean += out.theta[a];
    }
    mean /= n;
    for (double& t : out.theta) t -= mean;
    return out;
  }
  // Each stick parameter is the logit of the conditional probability of its
  // action given that no earlier action was chosen.
  double remaining = 1.0;
  for (int k = 0; k + 1 < n; ++k) {
    const double rest = remaining - probs[k];
    out.theta[k] = std::log(probs[k]) - std::log(std::max(rest, 1e-300));
    remaining = rest;
  }
  return out;
}

std::vector<double> EstimateStep(std::span<const double> prev,
                                 std::span<const double> next,
                                 double alpha_in) {
  if (!(alpha_in > 0.0)) {
    throw InvalidArgument("assumed opponent learning rate must be positive");
  }
  if (prev.size() != next.size()) {
    throw InvalidArgument("parameter estimates differ in shape");
  }
  std::vector<double> step(prev.size());
  for (std::size_t i = 0; i < prev.size(); ++i) {
    step[i] = (next[i] - prev[i]) / alpha_in;
  }
  return step;
}

std::vector<double> StepSample::Input() const {
  std::vector<double> x = own_theta;
  x.insert(x.end(), opponent_theta.begin(), opponent_theta.end());
  return x;
}

StepHistory::StepHistory(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw InvalidArgument("history capacity must be >= 1");
}

void StepHistory::Push(std::vector<double> own_theta,
                       std::vector<double> opponent_theta,
                       std::vector<double> step) {
  if (opponent_theta.size() != step.size()) {
    throw InvalidArgument("step and opponent parameters differ in shape");
  }
  if (!entries_.empty() &&
      (entries_.front().own_theta.size() != own_theta.size() ||
       entries_.front().opponent_theta.size() != opponent_theta.size())) {
    throw InvalidArgument("history entry shape differs from earlier entries");
  }
  entries_.push_back(
      StepSample{std::move(own_theta), std::move(opponent_theta), std::move(step)});
  while (entries_.size() > capacity_) entries_.pop_front();
}

}  // namespace monfg
