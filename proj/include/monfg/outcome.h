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

#ifndef MONFG_OUTCOME_H_
#define MONFG_OUTCOME_H_

#include <utility>
#include <vector>

namespace monfg {

// Relative frequencies of joint actions (a1, a2), row-major.
struct OutcomeDistribution {
  int rows = 0;
  int cols = 0;
  std::vector<double> frequencies;
  int first_episode = 0;  // inclusive window bounds
  int last_episode = 0;
  int trials = 0;

  static OutcomeDistribution Zeros(int rows, int cols);
  static OutcomeDistribution PointMass(int rows, int cols, int a1, int a2);

  double At(int a1, int a2) const { return frequencies[a1 * cols + a2]; }
  double& At(int a1, int a2) { return frequencies[a1 * cols + a2]; }
  double Mass(const std::vector<std::pair<int, int>>& cells) const;
  double Total() const;
};

}  // namespace monfg

#endif  // MONFG_OUTCOME_H_
