// Copyright 2026 The rewardlab Authors
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

#include "rewardlab/tabular/solvers.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rewardlab/common/error.h"

namespace rewardlab::tabular {

ValueIterationResult ValueIteration(const TabularMDP& mdp, double tol, double tie_tol,
                                    int max_iters) {
  Validate(mdp);
  Require(mdp.discount < 1.0, ErrorCode::kDomain, "value iteration needs discount < 1");
  Require(tol > 0.0, ErrorCode::kDomain, "tolerance must be positive");
  const int S = mdp.num_states;
  const int A = mdp.num_actions;

  ValueIterationResult out;
  out.value.assign(S, 0.0);
  out.q.assign(static_cast<size_t>(S) * A, 0.0);
  std::vector<double> next(S, 0.0);

  auto backup = [&](const std::vector<double>& v) {
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        double q = 0.0;
        if (!mdp.terminal[s]) {
          for (int t = 0; t < S; ++t) {
            const double p = mdp.P(s, a, t);
            if (p == 0.0) continue;
            q += p * (mdp.R(s, a, t) + mdp.discount * v[t]);
          }
        }
        out.q[static_cast<size_t>(s) * A + a] = q;
      }
    }
  };

  for (out.iterations = 0; out.iterations < max_iters; ++out.iterations) {
    backup(out.value);
    double residual = 0.0;
    for (int s = 0; s < S; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < A; ++a) best = std::max(best, out.q[static_cast<size_t>(s) * A + a]);
      next[s] = mdp.terminal[s] ? 0.0 : best;
      residual = std::max(residual, std::abs(next[s] - out.value[s]));
    }
    out.value.swap(next);
    out.residual = residual;
    if (residual < tol) break;
  }
  backup(out.value);

  out.greedy.assign(S, {});
  for (int s = 0; s < S; ++s) {
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < A; ++a) best = std::max(best, out.q[static_cast<size_t>(s) * A + a]);
    for (int a = 0; a < A; ++a) {
      if (mdp.terminal[s] || out.q[static_cast<size_t>(s) * A + a] >= best - tie_tol) {
        out.greedy[s].push_back(a);
      }
    }
  }
  return out;
}

TabularMDP ShapeMdp(const TabularMDP& mdp, const PotentialTable& phi) {
  Require(phi.size() == mdp.num_states, ErrorCode::kDimension,
          "potential has " + std::to_string(phi.size()) + " entries for " +
              std::to_string(mdp.num_states) + " states");
  for (int s = 0; s < mdp.num_states; ++s) {
    Require(!mdp.terminal[s] || phi[s] == 0.0, ErrorCode::kPrecondition,
            "potential must vanish on terminal states");
  }
  TabularMDP shaped = mdp;
  for (int s = 0; s < mdp.num_states; ++s) {
    if (mdp.terminal[s]) continue;  // absorbing, stays reward-free
    for (int a = 0; a < mdp.num_actions; ++a) {
      for (int t = 0; t < mdp.num_states; ++t) {
        shaped.reward[mdp.Index(s, a, t)] += mdp.discount * phi[t] - phi[s];
      }
    }
  }
  return shaped;
}

double TrajectoryReturn(const Trajectory& traj, double discount) {
  Require(!traj.steps.empty(), ErrorCode::kInput, "empty trajectory");
  double total = 0.0;
  double factor = 1.0;
  for (const Step& step : traj.steps) {
    total += factor * step.reward;
    factor *= discount;
  }
  return total;
}

ReturnIdentity ShapedReturnIdentityCheck(const Trajectory& traj, const PotentialTable& phi,
                                         double discount) {
  Require(!traj.steps.empty(), ErrorCode::kInput, "empty trajectory");
  const int last = traj.steps.back().next_state;
  Require(last >= 0 && last < phi.size() && phi.IsTerminal(last), ErrorCode::kPrecondition,
          "trajectory does not end in a terminal state");
  ReturnIdentity out;
  out.unshaped = TrajectoryReturn(traj, discount);
  double factor = 1.0;
  for (const Step& step : traj.steps) {
    const double shaping = discount * phi[step.next_state] - phi[step.state];
    out.shaped += factor * (step.reward + shaping);
    factor *= discount;
  }
  const double phi0 = phi[traj.steps.front().state];
  out.residual = std::abs(out.shaped - (out.unshaped - phi0));
  return out;
}

namespace {

std::vector<int> LiveStates(const MarkovGame& game) {
  std::vector<int> live;
  for (int s = 0; s < game.num_states; ++s) {
    if (!game.terminal[s]) live.push_back(s);
  }
  return live;
}

}  // namespace

std::vector<double> EvaluateProfile(const MarkovGame& game, const Profile& profile) {
  const int S = game.num_states;
  const int n = game.num_players();
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(S, S);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(S, n);
  std::vector<int> actions(n);
  for (int s = 0; s < S; ++s) {
    if (game.terminal[s]) continue;  // V(terminal) = 0
    for (int i = 0; i < n; ++i) actions[i] = profile[i][s];
    const int j = game.JointIndex(actions);
    for (int t = 0; t < S; ++t) {
      const double p = game.transition[game.Index(s, j, t)];
      if (p == 0.0) continue;
      system(s, t) -= game.discount * p;
      for (int i = 0; i < n; ++i) rhs(s, i) += p * game.reward[i][game.Index(s, j, t)];
    }
  }
  const Eigen::MatrixXd values = system.partialPivLu().solve(rhs);
  std::vector<double> out(n, 0.0);
  for (int s = 0; s < S; ++s) {
    for (int i = 0; i < n; ++i) out[i] += game.initial_dist[s] * values(s, i);
  }
  return out;
}

std::set<Profile> EnumerateDeterministicNash(const MarkovGame& game,
                                             const NashOptions& options) {
  Validate(game);
  const int n = game.num_players();
  const std::vector<int> live = LiveStates(game);
  const int L = static_cast<int>(live.size());

  // Per-player policy count A_i^L and the total profile count.
  std::vector<uint64_t> policy_count(n, 1);
  uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < L; ++k) {
      policy_count[i] *= static_cast<uint64_t>(game.num_actions[i]);
      Require(policy_count[i] <= options.max_profiles, ErrorCode::kSize,
              "deterministic profile count exceeds the enumeration cap");
    }
    total *= policy_count[i];
    Require(total <= options.max_profiles, ErrorCode::kSize,
            "deterministic profile count " + std::to_string(total) +
                " exceeds the enumeration cap " + std::to_string(options.max_profiles));
  }

  auto decode_policy = [&](int player, uint64_t code) {
    std::vector<int> policy(game.num_states, 0);
    for (int k = 0; k < L; ++k) {
      policy[live[k]] = static_cast<int>(code % game.num_actions[player]);
      code /= game.num_actions[player];
    }
    return policy;
  };
  // Profile index is mixed radix over per-player policy codes, player 0 last.
  auto decode_profile = [&](uint64_t index) {
    std::vector<uint64_t> codes(n);
    for (int i = n - 1; i >= 0; --i) {
      codes[i] = index % policy_count[i];
      index /= policy_count[i];
    }
    return codes;
  };
  auto encode_profile = [&](const std::vector<uint64_t>& codes) {
    uint64_t index = 0;
    for (int i = 0; i < n; ++i) index = index * policy_count[i] + codes[i];
    return index;
  };

  std::vector<std::vector<double>> returns(total);
  for (uint64_t index = 0; index < total; ++index) {
    const auto codes = decode_profile(index);
    Profile profile(n);
    for (int i = 0; i < n; ++i) profile[i] = decode_policy(i, codes[i]);
    returns[index] = EvaluateProfile(game, profile);
  }

  std::set<Profile> equilibria;
  for (uint64_t index = 0; index < total; ++index) {
    const auto codes = decode_profile(index);
    bool stable = true;
    for (int i = 0; i < n && stable; ++i) {
      auto deviation = codes;
      for (uint64_t alt = 0; alt < policy_count[i]; ++alt) {
        if (alt == codes[i]) continue;
        deviation[i] = alt;
        if (returns[encode_profile(deviation)][i] > returns[index][i] + options.tolerance) {
          stable = false;
          break;
        }
      }
    }
    if (!stable) continue;
    Profile profile(n);
    for (int i = 0; i < n; ++i) profile[i] = decode_policy(i, codes[i]);
    equilibria.insert(std::move(profile));
  }
  return equilibria;
}

MarkovGame ShapeGame(const MarkovGame& game, const std::vector<int>& players,
                     const PotentialTable& phi) {
  Require(phi.size() == game.num_states, ErrorCode::kDimension,
          "potential length does not match the game's state count");
  MarkovGame shaped = game;
  const int J = game.num_joint_actions();
  for (int player : players) {
    Require(player >= 0 && player < game.num_players(), ErrorCode::kInput,
            "no such player " + std::to_string(player));
    auto& r = shaped.reward[player];
    for (int s = 0; s < game.num_states; ++s) {
      if (game.terminal[s]) continue;
      for (int j = 0; j < J; ++j) {
        for (int t = 0; t < game.num_states; ++t) {
          r[game.Index(s, j, t)] += game.discount * phi[t] - phi[s];
        }
      }
    }
  }
  return shaped;
}

double TdUpdateEquivalenceCheck(const TabularMDP& mdp, const PotentialTable& phi, int steps,
                                const TdCheckOptions& options) {
  Validate(mdp);
  Require(phi.size() == mdp.num_states, ErrorCode::kDimension,
          "potential length does not match the MDP's state count");
  Rng rng(options.seed);
  const int S = mdp.num_states;
  std::vector<double> plain(S, 0.0);
  for (int s = 0; s < S; ++s) {
    if (!mdp.terminal[s]) plain[s] = rng.Uniform(-1.0, 1.0);
  }
  std::vector<double> shaped(S);
  for (int s = 0; s < S; ++s) shaped[s] = plain[s] - phi[s];

  const double alpha = options.learning_rate;
  const double gamma = mdp.discount;
  std::vector<double> row(S);
  double max_dev = 0.0;
  int s = static_cast<int>(rng.Categorical(mdp.initial_dist));
  for (int step = 0; step < steps; ++step) {
    if (mdp.terminal[s]) s = static_cast<int>(rng.Categorical(mdp.initial_dist));
    const int a = static_cast<int>(rng.UniformInt(mdp.num_actions));
    for (int t = 0; t < S; ++t) row[t] = mdp.P(s, a, t);
    const int next = static_cast<int>(rng.Categorical(row));
    const double r = mdp.R(s, a, next);
    const double f = gamma * phi[next] - phi[s];

    const double delta_plain = r + gamma * plain[next] - plain[s];
    const double delta_shaped = r + f + gamma * shaped[next] - shaped[s];
    max_dev = std::max(max_dev, std::abs(delta_plain - delta_shaped));
    plain[s] += alpha * delta_plain;
    shaped[s] += alpha * delta_shaped;
    s = next;
  }
  return max_dev;
}

}  // namespace rewardlab::tabular
