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

#include "monfg/game.h"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "monfg/errors.h"
#include "monfg/kv_file.h"

namespace monfg {
namespace {

std::vector<std::string> Labels(int n) {
  static const char* kThree[] = {"L", "M", "R"};
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(n <= 3 ? kThree[i] : "a" + std::to_string(i));
  }
  return out;
}

Monfg TwoPlayer(const std::string& name, int n,
                std::vector<PayoffVector> cells) {
  return Monfg(name, {Labels(n), Labels(n)}, 2, std::move(cells));
}

// Visits every joint action with the product of its action probabilities.
template <typename Fn>
void ForEachJoint(const Monfg& game, const MixedStrategyProfile& profile,
                  Fn&& fn) {
  const int n = game.num_agents();
  JointAction joint(n, 0);
  for (int flat = 0; flat < game.num_joint_actions(); ++flat) {
    double prob = 1.0;
    for (int i = 0; i < n; ++i) prob *= profile.strategies[i][joint[i]];
    fn(flat, prob);
    for (int i = n - 1; i >= 0; --i) {
      if (++joint[i] < game.num_actions(i)) break;
      joint[i] = 0;
    }
  }
}

}  // namespace

Monfg::Monfg(std::string name,
             std::vector<std::vector<std::string>> action_labels,
             int num_objectives, std::vector<PayoffVector> shared_payoffs)
    : Monfg(std::move(name), action_labels, num_objectives,
            std::vector<std::vector<PayoffVector>>(action_labels.size(),
                                                   shared_payoffs)) {
  shared_ = true;
}

Monfg::Monfg(std::string name,
             std::vector<std::vector<std::string>> action_labels,
             int num_objectives,
             std::vector<std::vector<PayoffVector>> payoffs)
    : name_(std::move(name)),
      action_labels_(std::move(action_labels)),
      num_objectives_(num_objectives),
      num_joint_actions_(1),
      shared_(false),
      payoffs_(std::move(payoffs)) {
  for (const auto& labels : action_labels_) {
    action_counts_.push_back(static_cast<int>(labels.size()));
    num_joint_actions_ *= std::max<int>(1, labels.size());
  }
  Validate();
}

void Monfg::Validate() const {
  if (num_agents() < 2) throw InvalidArgument("MONFG needs at least 2 agents");
  if (num_objectives_ < 1) {
    throw InvalidArgument("MONFG needs at least 1 objective");
  }
  for (int count : action_counts_) {
    if (count < 1) throw InvalidArgument("every agent needs an action");
  }
  if (static_cast<int>(payoffs_.size()) != num_agents()) {
    throw InvalidArgument("payoff table count does not match agent count");
  }
  for (const auto& table : payoffs_) {
    if (static_cast<int>(table.size()) != num_joint_actions_) {
      throw InvalidArgument("payoffs must cover every joint action");
    }
    for (const auto& p : table) {
      if (static_cast<int>(p.size()) != num_objectives_) {
        throw InvalidArgument("payoff vector length differs from objectives");
      }
    }
  }
}

int Monfg::num_actions(int agent) const {
  if (agent < 0 || agent >= num_agents()) {
    throw InvalidArgument("agent index out of range");
  }
  return action_counts_[agent];
}

const std::vector<std::string>& Monfg::action_labels(int agent) const {
  num_actions(agent);
  return action_labels_[agent];
}

int Monfg::FlatIndex(std::span<const int> joint) const {
  if (static_cast<int>(joint.size()) != num_agents()) {
    throw InvalidArgument("joint action has wrong number of agents");
  }
  int flat = 0;
  for (int i = 0; i < num_agents(); ++i) {
    if (joint[i] < 0 || joint[i] >= action_counts_[i]) {
      throw InvalidArgument("action index out of range");
    }
    flat = flat * action_counts_[i] + joint[i];
  }
  return flat;
}

JointAction Monfg::Unflatten(int flat) const {
  if (flat < 0 || flat >= num_joint_actions_) {
    throw InvalidArgument("flat joint index out of range");
  }
  JointAction joint(num_agents());
  for (int i = num_agents() - 1; i >= 0; --i) {
    joint[i] = flat % action_counts_[i];
    flat /= action_counts_[i];
  }
  return joint;
}

std::span<const double> Monfg::Payoff(int agent,
                                      std::span<const int> joint) const {
  return Payoff(agent, FlatIndex(joint));
}

std::span<const double> Monfg::Payoff(int agent, int flat) const {
  num_actions(agent);
  if (flat < 0 || flat >= num_joint_actions_) {
    throw InvalidArgument("flat joint index out of range");
  }
  return payoffs_[agent][flat];
}

std::span<const double> Monfg::Payoff(int agent, int a1, int a2) const {
  const int joint[2] = {a1, a2};
  return Payoff(agent, std::span<const int>(joint, 2));
}

Monfg GameCatalogue(int game_id) {
  switch (game_id) {
    case 1:
      return TwoPlayer("game1", 2, {{4, 0}, {3, 1},  //
                                    {3, 1}, {2, 2}});
    case 2:
      return TwoPlayer("game2", 2, {{4, 1}, {1, 2},  //
                                    {3, 1}, {3, 2}});
    case 3:
      return TwoPlayer("game3", 3, {{4, 1}, {1, 2}, {2, 1},  //
                                    {3, 1}, {3, 2}, {1, 2},  //
                                    {1, 2}, {2, 1}, {1, 3}});
    case 4:
      return TwoPlayer("game4", 2, {{4, 0}, {2, 2},  //
                                    {2, 2}, {0, 4}});
    case 5:
      return TwoPlayer("game5", 3, {{4, 0}, {3, 1}, {2, 2},  //
                                    {3, 1}, {2, 2}, {1, 3},  //
                                    {2, 2}, {1, 3}, {0, 4}});
    default:
      throw InvalidArgument("unknown game id " + std::to_string(game_id) +
                            " (expected 1..5)");
  }
}

Monfg ParseGame(const std::string& text) {
  const KvFile kv = KvFile::Parse(text);
  const std::string name = kv.Get("name", "custom");
  const int objectives = kv.GetInt("objectives");

  std::vector<std::vector<std::string>> labels;
  for (int agent = 1; kv.Has("actions" + std::to_string(agent)); ++agent) {
    labels.push_back(SplitWords(kv.Get("actions" + std::to_string(agent))));
  }
  if (labels.size() < 2) {
    throw InvalidArgument("game file needs actions1 and actions2");
  }
  const int num_agents = static_cast<int>(labels.size());

  int num_joint = 1;
  for (const auto& l : labels) num_joint *= static_cast<int>(l.size());

  auto flat_of = [&](const std::vector<std::string>& words) {
    if (static_cast<int>(words.size()) != num_agents) {
      throw InvalidArgument("payoff key needs one action label per agent");
    }
    int flat = 0;
    for (int i = 0; i < num_agents; ++i) {
      int idx = -1;
      for (int a = 0; a < static_cast<int>(labels[i].size()); ++a) {
        if (labels[i][a] == words[i]) idx = a;
      }
      if (idx < 0) throw InvalidArgument("unknown action label " + words[i]);
      flat = flat * static_cast<int>(labels[i].size()) + idx;
    }
    return flat;
  };
  auto vector_of = [&](const std::string& value) {
    PayoffVector p;
    for (const auto& w : SplitWords(value)) p.push_back(std::stod(w));
    if (static_cast<int>(p.size()) != objectives) {
      throw InvalidArgument("payoff '" + value + "' needs " +
                            std::to_string(objectives) + " components");
    }
    return p;
  };

  std::vector<std::optional<PayoffVector>> shared(num_joint);
  std::vector<std::vector<std::optional<PayoffVector>>> overrides(
      num_agents, std::vector<std::optional<PayoffVector>>(num_joint));
  for (const auto& [key, value] : kv.entries()) {
    auto words = SplitWords(key);
    if (words.empty()) continue;
    const std::string head = words.front();
    words.erase(words.begin());
    if (head == "payoff") {
      shared[flat_of(words)] = vector_of(value);
    } else if (head.rfind("payoff.", 0) == 0) {
      const int agent = std::stoi(head.substr(7)) - 1;
      if (agent < 0 || agent >= num_agents) {
        throw InvalidArgument("payoff override for unknown agent: " + head);
      }
      overrides[agent][flat_of(words)] = vector_of(value);
    }
  }

  bool any_override = false;
  for (const auto& per_agent : overrides) {
    for (const auto& p : per_agent) any_override |= p.has_value();
  }
  std::vector<std::vector<PayoffVector>> tables(num_agents);
  for (int agent = 0; agent < num_agents; ++agent) {
    for (int flat = 0; flat < num_joint; ++flat) {
      const auto& p = overrides[agent][flat] ? overrides[agent][flat]
                                             : shared[flat];
      if (!p) {
        throw InvalidArgument("game file is missing payoff for joint action " +
                              std::to_string(flat));
      }
      tables[agent].push_back(*p);
    }
  }
  if (!any_override) {
    return Monfg(name, std::move(labels), objectives, std::move(tables[0]));
  }
  return Monfg(name, std::move(labels), objectives, std::move(tables));
}

Monfg LoadGameFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open game file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseGame(buffer.str());
}

UtilityFn UtilityFn::SumOfSquares() {
  return UtilityFn(Id::kSumOfSquares, "sum_of_squares",
                   [](std::span<const ad::Var> p) {
                     ad::Var total = p[0] * p[0];
                     for (std::size_t c = 1; c < p.size(); ++c) {
                       total = total + p[c] * p[c];
                     }
                     return total;
                   });
}

UtilityFn UtilityFn::Product() {
  return UtilityFn(Id::kProduct, "product", [](std::span<const ad::Var> p) {
    ad::Var total = p[0];
    for (std::size_t c = 1; c < p.size(); ++c) total = total * p[c];
    return total;
  });
}

UtilityFn UtilityFn::Custom(std::string name, Expression expression) {
  return UtilityFn(Id::kCustom, std::move(name), std::move(expression));
}

UtilityFn UtilityFn::Linear(std::vector<double> weights) {
  return Custom("linear", [weights](std::span<const ad::Var> p) {
    if (p.size() != weights.size()) {
      throw InvalidArgument("linear utility: weight count mismatch");
    }
    ad::Var total = p[0] * weights[0];
    for (std::size_t c = 1; c < p.size(); ++c) total = total + p[c] * weights[c];
    return total;
  });
}

double UtilityFn::Eval(std::span<const double> payoff) const {
  // Closed forms avoid building a graph for the two benchmark utilities.
  switch (id_) {
    case Id::kSumOfSquares: {
      double total = 0.0;
      for (double v : payoff) total += v * v;
      return total;
    }
    case Id::kProduct: {
      double total = 1.0;
      for (double v : payoff) total *= v;
      return total;
    }
    case Id::kCustom: {
      ad::Graph graph;
      auto vars = graph.Parameters(payoff);
      return expression_(vars).value();
    }
  }
  return 0.0;
}

std::vector<double> UtilityFn::Grad(std::span<const double> payoff) const {
  std::vector<double> grad(payoff.size());
  switch (id_) {
    case Id::kSumOfSquares:
      for (std::size_t c = 0; c < payoff.size(); ++c) grad[c] = 2 * payoff[c];
      return grad;
    case Id::kProduct:
      for (std::size_t c = 0; c < payoff.size(); ++c) {
        double prod = 1.0;
        for (std::size_t k = 0; k < payoff.size(); ++k) {
          if (k != c) prod *= payoff[k];
        }
        grad[c] = prod;
      }
      return grad;
    case Id::kCustom: {
      ad::Graph graph;
      auto vars = graph.Parameters(payoff);
      auto g = graph.Grad(expression_(vars), vars);
      return graph.values(g);
    }
  }
  return grad;
}

ad::Var UtilityFn::Eval(std::span<const ad::Var> payoff) const {
  if (payoff.empty()) throw InvalidArgument("utility of an empty payoff");
  return expression_(payoff);
}

MixedStrategyProfile MixedStrategyProfile::Pure(const Monfg& game,
                                                std::span<const int> joint) {
  game.FlatIndex(joint);
  MixedStrategyProfile profile;
  for (int i = 0; i < game.num_agents(); ++i) {
    ProbabilityVector s(game.num_actions(i), 0.0);
    s[joint[i]] = 1.0;
    profile.strategies.push_back(std::move(s));
  }
  return profile;
}

MixedStrategyProfile MixedStrategyProfile::Uniform(const Monfg& game) {
  MixedStrategyProfile profile;
  for (int i = 0; i < game.num_agents(); ++i) {
    const int n = game.num_actions(i);
    profile.strategies.emplace_back(n, 1.0 / n);
  }
  return profile;
}

bool MixedStrategyProfile::IsPure(double tol) const {
  for (const auto& s : strategies) {
    bool has_one = false;
    for (double p : s) {
      if (std::abs(p - 1.0) <= tol) has_one = true;
      else if (std::abs(p) > tol) return false;
    }
    if (!has_one) return false;
  }
  return true;
}

void ValidateProfile(const Monfg& game, const MixedStrategyProfile& profile) {
  if (static_cast<int>(profile.strategies.size()) != game.num_agents()) {
    throw InvalidArgument("profile has wrong number of agents");
  }
  for (int i = 0; i < game.num_agents(); ++i) {
    const auto& s = profile.strategies[i];
    if (static_cast<int>(s.size()) != game.num_actions(i)) {
      throw InvalidArgument("strategy size does not match action count");
    }
    double total = 0.0;
    for (double p : s) {
      if (!(p >= 0.0)) throw InvalidArgument("negative probability");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw InvalidArgument("strategy does not sum to 1");
    }
  }
}

PayoffVector ExpectedPayoff(const Monfg& game,
                            const MixedStrategyProfile& profile, int agent) {
  ValidateProfile(game, profile);
  PayoffVector total(game.num_objectives(), 0.0);
  ForEachJoint(game, profile, [&](int flat, double prob) {
    if (prob == 0.0) return;
    const auto p = game.Payoff(agent, flat);
    for (int c = 0; c < game.num_objectives(); ++c) total[c] += prob * p[c];
  });
  return total;
}

double SerUtility(const Monfg& game, const MixedStrategyProfile& profile,
                  int agent, const UtilityFn& u) {
  return u.Eval(ExpectedPayoff(game, profile, agent));
}

double EsrUtility(const Monfg& game, const MixedStrategyProfile& profile,
                  int agent, const UtilityFn& u) {
  ValidateProfile(game, profile);
  double total = 0.0;
  ForEachJoint(game, profile, [&](int flat, double prob) {
    if (prob == 0.0) return;
    total += prob * u.Eval(game.Payoff(agent, flat));
  });
  return total;
}

}  // namespace monfg
