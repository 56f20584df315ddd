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

#include "monfg/harness.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <spdlog/spdlog.h>
#include <json.hpp>

#include "monfg/errors.h"
#include "monfg/kv_file.h"
#include "monfg/policy.h"

namespace monfg {
namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::ordered_json;

int WindowEpisodes(int episodes, double fraction) {
  const int n = static_cast<int>(std::ceil(fraction * episodes - 1e-9));
  return std::clamp(n, 1, episodes);
}

std::string Num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

ordered_json LearnerJson(const LearnerConfig& c) {
  ordered_json j;
  j["algorithm"] = ToString(c.algorithm);
  j["policy"] = ToString(c.policy_kind());
  j["alpha_theta"] = c.alpha_theta;
  j["alpha_q"] = c.alpha_q;
  j["alpha_in"] = c.alpha_in;
  j["lookahead"] = c.lookahead;
  j["rollout_length"] = c.rollout_length;
  j["rollout_batch"] = c.rollout_batch;
  j["gamma"] = c.gamma;
  j["history"] = c.history;
  j["window"] = c.window;
  j["shape_through_gp"] = c.shape_through_gp;
  j["gp_noise"] = c.gp_noise;
  j["evidence_iters"] = c.evidence_iters;
  j["smoothing"] = c.smoothing;
  return j;
}

ordered_json JointJson(const Monfg& game, const JointAction& joint) {
  return ordered_json::array({game.action_labels(0)[joint[0]],
                              game.action_labels(1)[joint[1]]});
}

ordered_json CertificateJson(const NeCertificate& c) {
  ordered_json j;
  j["profile"] = c.profile.strategies;
  j["epsilon"] = c.epsilon;
  j["is_pure"] = c.is_pure;
  j["is_ne"] = c.is_ne();
  j["search_resolution"] = c.search_resolution;
  j["tolerance"] = c.tolerance;
  return j;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (episodes < 1) throw ConfigError("episodes must be >= 1");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw ConfigError("window fraction must lie in (0, 1]");
  }
  try {
    agent1.Validate();
    agent2.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (agent1.full_information() != agent2.full_information()) {
    throw ConfigError(
        "a full-information learner (lola) can only play another lola "
        "learner");
  }
}

Monfg ResolveGame(const std::string& game) {
  if (!game.empty() && game.find_first_not_of("0123456789") == std::string::npos) {
    return GameCatalogue(std::stoi(game));
  }
  return LoadGameFile(game);
}

std::uint64_t TrialSeed(std::uint64_t base, int trial) {
  return base * kTrialSeedStride + static_cast<std::uint64_t>(trial);
}

int InteractionsPerEpisode(const ExperimentConfig& config) {
  int n = 1;
  for (const auto* c : {&config.agent1, &config.agent2}) {
    if (c->uses_opponent_model()) n = std::max(n, c->window);
  }
  return n;
}

int TrialLog::episodes() const {
  return interactions_per_episode > 0
             ? static_cast<int>(action1.size()) / interactions_per_episode
             : 0;
}

TrialLog RunTrial(const ExperimentConfig& config, const Monfg& game,
                  int trial) {
  config.Validate();
  if (game.num_agents() != 2) throw ConfigError("matchups need two agents");
  const int per_episode = InteractionsPerEpisode(config);
  Rng rng(TrialSeed(config.seed, trial));

  auto row = Learner::Create(config.agent1, game, 0, RowUtility());
  auto col = Learner::Create(config.agent2, game, 1, ColumnUtility());
  if (config.agent1.full_information()) {
    auto* r = static_cast<MoLolaLearner*>(row.get());
    auto* c = static_cast<MoLolaLearner*>(col.get());
    r->SetOpponent(c);
    c->SetOpponent(r);
  }

  TrialLog log;
  log.trial = trial;
  log.interactions_per_episode = per_episode;
  const std::size_t total =
      static_cast<std::size_t>(config.episodes) * per_episode;
  log.action1.reserve(total);
  log.action2.reserve(total);
  log.probabilities.reserve(static_cast<std::size_t>(config.episodes) *
                            (game.num_actions(0) + game.num_actions(1)));

  for (int ep = 0; ep < config.episodes; ++ep) {
    const auto p1 = Probabilities(row->policy());
    const auto p2 = Probabilities(col->policy());
    log.probabilities.insert(log.probabilities.end(), p1.begin(), p1.end());
    log.probabilities.insert(log.probabilities.end(), p2.begin(), p2.end());
    for (int i = 0; i < per_episode; ++i) {
      const int a1 = SampleFromProbabilities(p1, rng);
      const int a2 = SampleFromProbabilities(p2, rng);
      const auto r1 = game.Payoff(0, a1, a2);
      const auto r2 = game.Payoff(1, a1, a2);
      // Each learner sees only its own action, the opponent's action and its
      // own payoff.
      row->Observe(Experience{a1, a2, PayoffVector(r1.begin(), r1.end())});
      col->Observe(Experience{a2, a1, PayoffVector(r2.begin(), r2.end())});
      log.action1.push_back(static_cast<std::uint8_t>(a1));
      log.action2.push_back(static_cast<std::uint8_t>(a2));
    }
    row->EndEpisode(rng);
    col->EndEpisode(rng);
    row->Commit();
    col->Commit();
  }
  return log;
}

RunArtifacts RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const auto start = std::chrono::steady_clock::now();
  RunArtifacts out{config, ResolveGame(config.game), {}, {}, 0.0};
  for (int a = 0; a < 2; ++a) {
    if (out.game.num_actions(a) > 255) {
      throw ConfigError("at most 255 actions per agent are supported");
    }
  }
  out.trials.reserve(config.trials);
  for (int t = 0; t < config.trials; ++t) {
    out.trials.push_back(RunTrial(config, out.game, t));
  }
  out.outcome =
      ComputeOutcomeDistribution(out.game, out.trials, config.window_fraction);
  out.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return out;
}

OutcomeDistribution ComputeOutcomeDistribution(
    const Monfg& game, const std::vector<TrialLog>& logs,
    double window_fraction) {
  if (logs.empty()) throw InvalidArgument("no trial logs");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw InvalidArgument("window fraction must lie in (0, 1]");
  }
  auto dist = OutcomeDistribution::Zeros(game.num_actions(0),
                                         game.num_actions(1));
  const int episodes = logs.front().episodes();
  if (episodes < 1) throw InvalidArgument("trial logs hold no episodes");
  const int window = WindowEpisodes(episodes, window_fraction);
  dist.first_episode = episodes - window;
  dist.last_episode = episodes - 1;
  dist.trials = static_cast<int>(logs.size());

  std::vector<long long> counts(dist.frequencies.size(), 0);
  long long total = 0;
  for (const auto& log : logs) {
    if (log.episodes() != episodes) {
      throw InvalidArgument("trial logs differ in length");
    }
    const std::size_t begin =
        static_cast<std::size_t>(dist.first_episode) *
        log.interactions_per_episode;
    for (std::size_t i = begin; i < log.action1.size(); ++i) {
      ++counts[log.action1[i] * dist.cols + log.action2[i]];
      ++total;
    }
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    dist.frequencies[i] = static_cast<double>(counts[i]) / total;
  }
  return dist;
}

std::vector<double> MeanActionProbabilities(const Monfg& game,
                                            const std::vector<TrialLog>& logs,
                                            int agent, double window_fraction) {
  if (logs.empty()) throw InvalidArgument("no trial logs");
  if (agent != 0 && agent != 1) throw InvalidArgument("agent must be 0 or 1");
  const int n1 = game.num_actions(0);
  const int stride = n1 + game.num_actions(1);
  const int n = game.num_actions(agent);
  const int offset = agent == 0 ? 0 : n1;
  std::vector<double> mean(n, 0.0);
  long long count = 0;
  for (const auto& log : logs) {
    const int episodes = static_cast<int>(log.probabilities.size()) / stride;
    const int window = WindowEpisodes(episodes, window_fraction);
    for (int ep = episodes - window; ep < episodes; ++ep) {
      for (int a = 0; a < n; ++a) {
        mean[a] += log.probabilities[ep * stride + offset + a];
      }
      ++count;
    }
  }
  for (double& m : mean) m /= static_cast<double>(count);
  return mean;
}

void EmitResults(const RunArtifacts& artifacts,
                 const std::filesystem::path& directory) {
  const auto& game = artifacts.game;
  const auto& config = artifacts.config;
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) {
    throw std::runtime_error("cannot create " + directory.string() + ": " +
                             ec.message());
  }
  const auto& labels1 = game.action_labels(0);
  const auto& labels2 = game.action_labels(1);
  const int c_count = game.num_objectives();

  {
    std::ostringstream csv;
    csv << "trial,episode,action1,action2";
    if (game.shared_payoffs()) {
      for (int c = 0; c < c_count; ++c) csv << ",payoff_" << c;
    } else {
      for (int agent = 1; agent <= 2; ++agent) {
        for (int c = 0; c < c_count; ++c) csv << ",payoff" << agent << "_" << c;
      }
    }
    csv << '\n';
    for (const auto& log : artifacts.trials) {
      for (std::size_t i = 0; i < log.action1.size(); ++i) {
        const int a1 = log.action1[i];
        const int a2 = log.action2[i];
        csv << log.trial << ',' << i / log.interactions_per_episode << ','
            << labels1[a1] << ',' << labels2[a2];
        for (int agent = 0; agent < (game.shared_payoffs() ? 1 : 2); ++agent) {
          for (double p : game.Payoff(agent, a1, a2)) csv << ',' << Num(p);
        }
        csv << '\n';
      }
    }
    WriteFile(directory / "outcomes.csv", csv.str());
  }

  {
    std::ostringstream csv;
    csv << "trial,episode,agent,action,probability\n";
    const int n1 = game.num_actions(0);
    const int n2 = game.num_actions(1);
    for (const auto& log : artifacts.trials) {
      const int episodes = log.episodes();
      for (int ep = 0; ep < episodes; ++ep) {
        const double* p = &log.probabilities[static_cast<std::size_t>(ep) *
                                             (n1 + n2)];
        for (int a = 0; a < n1; ++a) {
          csv << log.trial << ',' << ep << ",1," << labels1[a] << ','
              << Num(p[a]) << '\n';
        }
        for (int a = 0; a < n2; ++a) {
          csv << log.trial << ',' << ep << ",2," << labels2[a] << ','
              << Num(p[n1 + a]) << '\n';
        }
      }
    }
    WriteFile(directory / "traces.csv", csv.str());
  }

  const std::vector<UtilityFn> utilities{RowUtility(), ColumnUtility()};
  ordered_json summary;
  ordered_json cfg;
  cfg["game"] = config.game;
  cfg["episodes"] = config.episodes;
  cfg["trials"] = config.trials;
  cfg["seed"] = config.seed;
  cfg["window_fraction"] = config.window_fraction;
  cfg["interactions_per_episode"] = InteractionsPerEpisode(config);
  cfg["agent1"] = LearnerJson(config.agent1);
  cfg["agent2"] = LearnerJson(config.agent2);
  summary["config"] = cfg;

  const auto& dist = artifacts.outcome;
  ordered_json outcome;
  outcome["rows"] = labels1;
  outcome["cols"] = labels2;
  ordered_json matrix = ordered_json::array();
  for (int a1 = 0; a1 < dist.rows; ++a1) {
    ordered_json row = ordered_json::array();
    for (int a2 = 0; a2 < dist.cols; ++a2) row.push_back(dist.At(a1, a2));
    matrix.push_back(row);
  }
  outcome["matrix"] = matrix;
  outcome["first_episode"] = dist.first_episode;
  outcome["last_episode"] = dist.last_episode;
  outcome["trials"] = dist.trials;
  summary["outcome"] = outcome;

  const auto mean1 = MeanActionProbabilities(game, artifacts.trials, 0,
                                             config.window_fraction);
  const auto mean2 = MeanActionProbabilities(game, artifacts.trials, 1,
                                             config.window_fraction);
  summary["mean_probabilities"] = {{"agent1", mean1}, {"agent2", mean2}};

  const auto pure_ne = EnumeratePureNe(game, utilities);
  ordered_json eq;
  eq["pure_ne"] = ordered_json::array();
  eq["certificates"] = ordered_json::array();
  for (const auto& joint : pure_ne) {
    eq["pure_ne"].push_back(JointJson(game, joint));
    eq["certificates"].push_back(CertificateJson(
        VerifyNe(game, MixedStrategyProfile::Pure(game, joint), utilities)));
  }
  eq["empirical_profile"] = CertificateJson(
      VerifyNe(game, MixedStrategyProfile{{mean1, mean2}}, utilities));
  summary["equilibrium"] = eq;

  ordered_json prox;
  prox["pure_ne"] = ordered_json::array();
  if (!pure_ne.empty()) {
    auto mixture = OutcomeDistribution::Zeros(dist.rows, dist.cols);
    for (const auto& joint : pure_ne) {
      const auto point = OutcomeDistribution::PointMass(dist.rows, dist.cols,
                                                        joint[0], joint[1]);
      prox["pure_ne"].push_back({{"joint", JointJson(game, joint)},
                                 {"distance", OutcomeProximity(dist, point)}});
      mixture.At(joint[0], joint[1]) += 1.0 / pure_ne.size();
    }
    double mass = 0.0;
    for (const auto& joint : pure_ne) mass += dist.At(joint[0], joint[1]);
    prox["ne_mass"] = mass;
    prox["ne_mixture_distance"] = OutcomeProximity(dist, mixture);
  }
  summary["proximity"] = prox;
  WriteFile(directory / "summary.json", summary.dump(2) + "\n");

  ordered_json meta;
  meta["seed"] = config.seed;
  meta["trial_seed"] = "seed * 1000003 + trial";
  meta["version"] = kVersion;
  meta["compiler"] = __VERSION__;
  meta["wall_clock_seconds"] = artifacts.wall_seconds;
  meta["interactions_per_episode"] = InteractionsPerEpisode(config);
  meta["cadence"] =
      "policies frozen for the interactions of an episode; both learners "
      "update once per episode";
  WriteFile(directory / "meta.json", meta.dump(2) + "\n");
}

std::vector<std::filesystem::path> RunSweep(
    const std::filesystem::path& config_file) {
  const KvFile kv = KvFile::Load(config_file);
  auto list = [&](const std::string& key, const std::string& fallback) {
    auto words = SplitWords(kv.Get(key, fallback));
    if (words.empty()) throw ConfigError("empty value for '" + key + "'");
    return words;
  };
  const auto games = list("game", "1");
  const auto look1 = list("lookahead1", "1");
  const auto look2 = list("lookahead2", "1");
  std::vector<std::pair<std::string, std::string>> matchups;
  for (const auto& m : kv.All("matchup")) {
    const auto w = SplitWords(m);
    if (w.size() != 2) throw ConfigError("matchup needs two algorithms");
    matchups.emplace_back(w[0], w[1]);
  }
  if (matchups.empty()) {
    for (const auto& a1 : list("agent1", "ac")) {
      for (const auto& a2 : list("agent2", "ac")) matchups.emplace_back(a1, a2);
    }
  }
  const std::filesystem::path out = kv.Get("out", "results");

  std::vector<std::filesystem::path> written;
  for (const auto& g : games) {
    for (const auto& [a1, a2] : matchups) {
      for (const auto& l1 : look1) {
        for (const auto& l2 : look2) {
          ExperimentConfig c;
          c.game = g;
          try {
            c.agent1 = LearnerConfig::Defaults(ParseAlgorithm(a1), std::stoi(l1));
            c.agent2 = LearnerConfig::Defaults(ParseAlgorithm(a2), std::stoi(l2));
          } catch (const std::logic_error& e) {
            throw ConfigError(std::string("bad sweep entry: ") + e.what());
          }
          c.episodes = kv.GetInt("episodes", 3000);
          c.trials = kv.GetInt("trials", 30);
          c.seed = static_cast<std::uint64_t>(kv.GetInt("seed", 0));
          c.window_fraction = kv.GetDouble("window", 0.1);
          if (c.agent1.full_information() != c.agent2.full_information()) {
            spdlog::warn("skipping {} vs {}: lola only plays lola", a1, a2);
            continue;
          }
          std::string stem = std::filesystem::path(g).stem().string();
          const auto dir = out / ("g" + stem + "_" + ToString(c.agent1.algorithm) +
                                  "L" + l1 + "_vs_" +
                                  ToString(c.agent2.algorithm) + "L" + l2);
          c.out_dir = dir;
          spdlog::info("sweep: {}", dir.string());
          EmitResults(RunExperiment(c), dir);
          written.push_back(dir);
        }
      }
    }
  }
  return written;
}

}  // namespace monfg
