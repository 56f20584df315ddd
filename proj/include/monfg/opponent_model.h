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

#ifndef MONFG_OPPONENT_MODEL_H_
#define MONFG_OPPONENT_MODEL_H_

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "monfg/policy.h"

namespace monfg {

inline constexpr double kDefaultSmoothing = 0.1;

// Policy reconstruction from the opponent's action counts within one
// estimation window, during which the opponent's policy is frozen.
class FrequencyModel {
 public:
  FrequencyModel(int num_opponent_actions, int window, PolicyKind assumed_kind);

  int window() const { return window_; }
  PolicyKind assumed_kind() const { return assumed_kind_; }
  const std::vector<int>& counts() const { return counts_; }
  int total() const { return total_; }
  bool full() const { return total_ >= window_; }

  // Throws std::logic_error once the window is full; call Reset() first.
  void Observe(int opponent_action);
  void Reset();

  // P(a) = k(a) / sum k. When some count is zero every count gets
  // `smoothing` added so the result stays strictly positive. Throws
  // EmptyWindowError before the first observation.
  std::vector<double> EstimatePolicy(double smoothing = kDefaultSmoothing) const;

 private:
  int window_;
  PolicyKind assumed_kind_;
  std::vector<int> counts_;
  int total_ = 0;
};

// Parameters whose policy reproduces `probs`. Softmax parameters are
// centred to zero mean so the representative is unique. Throws
// InvalidArgument on a zero (or negative) probability.
PolicyParams InvertToParams(std::span<const double> probs, PolicyKind kind);

// (next - prev) / alpha_in.
std::vector<double> EstimateStep(std::span<const double> prev,
                                 std::span<const double> next,
                                 double alpha_in);

struct StepSample {
  std::vector<double> own_theta;       // agent's own parameters at time t
  std::vector<double> opponent_theta;  // estimated opponent parameters at t
  std::vector<double> step;            // estimated opponent step from t

  // GP input: own parameters followed by the opponent's.
  std::vector<double> Input() const;
};

// The last `capacity` step samples, oldest first.
class StepHistory {
 public:
  explicit StepHistory(std::size_t capacity);

  void Push(std::vector<double> own_theta, std::vector<double> opponent_theta,
            std::vector<double> step);

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return entries_.empty(); }
  const StepSample& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  std::size_t capacity_;
  std::deque<StepSample> entries_;
};

}  // namespace monfg

#endif  // MONFG_OPPONENT_MODEL_H_
