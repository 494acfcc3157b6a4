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

#include "rewardlab/tabular/mdp.h"

#include <cmath>
#include <string>

#include "rewardlab/common/error.h"

namespace rewardlab::tabular {
namespace {

constexpr double kRowTolerance = 1e-12;

void ValidateRows(const std::vector<double>& transition, int rows, int num_states,
                  const char* what) {
  for (int row = 0; row < rows; ++row) {
    double sum = 0.0;
    for (int next = 0; next < num_states; ++next) {
      const double p = transition[static_cast<size_t>(row) * num_states + next];
      Require(p >= 0.0 && std::isfinite(p), ErrorCode::kValidation,
              std::string(what) + ": negative or non-finite transition probability");
      sum += p;
    }
    Require(std::abs(sum - 1.0) <= kRowTolerance, ErrorCode::kValidation,
            std::string(what) + ": transition row " + std::to_string(row) +
                " sums to " + std::to_string(sum));
  }
}

void ValidateInitial(const std::vector<double>& dist, int num_states) {
  Require(static_cast<int>(dist.size()) == num_states, ErrorCode::kValidation,
          "initial distribution has wrong length");
  double sum = 0.0;
  for (double p : dist) {
    Require(p >= 0.0, ErrorCode::kValidation, "negative initial probability");
    sum += p;
  }
  Require(std::abs(sum - 1.0) <= kRowTolerance, ErrorCode::kValidation,
          "initial distribution does not sum to 1");
}

std::vector<double> RandomRow(int n, Rng& rng) {
  std::vector<double> row(n);
  double sum = 0.0;
  for (double& p : row) {
    p = rng.Uniform() + 1e-3;
    sum += p;
  }
  for (double& p : row) p /= sum;
  // Push the rounding residue onto the largest entry so rows sum to 1 tightly.
  double total = 0.0;
  size_t argmax = 0;
  for (size_t i = 0; i < row.size(); ++i) {
    total += row[i];
    if (row[i] > row[argmax]) argmax = i;
  }
  row[argmax] += 1.0 - total;
  return row;
}

}  // namespace

void Validate(const TabularMDP& mdp) {
  Require(mdp.num_states > 0 && mdp.num_actions > 0, ErrorCode::kValidation,
          "empty MDP");
  const size_t n = static_cast<size_t>(mdp.num_states) * mdp.num_actions * mdp.num_states;
  Require(mdp.transition.size() == n && mdp.reward.size() == n, ErrorCode::kValidation,
          "transition/reward tensor size mismatch");
  Require(static_cast<int>(mdp.terminal.size()) == mdp.num_states,
          ErrorCode::kValidation, "terminal mask has wrong length");
  Require(mdp.discount >= 0.0 && mdp.discount <= 1.0, ErrorCode::kValidation,
          "discount outside [0,1]");
  ValidateRows(mdp.transition, mdp.num_states * mdp.num_actions, mdp.num_states, "mdp");
  ValidateInitial(mdp.initial_dist, mdp.num_states);
  for (int s = 0; s < mdp.num_states; ++s) {
    if (!mdp.terminal[s]) continue;
    for (int a = 0; a < mdp.num_actions; ++a) {
      Require(mdp.P(s, a, s) == 1.0, ErrorCode::kValidation,
              "terminal state " + std::to_string(s) + " is not absorbing");
      for (int t = 0; t < mdp.num_states; ++t) {
        Require(mdp.R(s, a, t) == 0.0, ErrorCode::kValidation,
                "terminal state " + std::to_string(s) + " has onward reward");
      }
    }
  }
}

int MarkovGame::num_joint_actions() const {
  int n = 1;
  for (int a : num_actions) n *= a;
  return n;
}

int MarkovGame::JointIndex(const std::vector<int>& actions) const {
  int index = 0;
  for (size_t i = 0; i < num_actions.size(); ++i) index = index * num_actions[i] + actions[i];
  return index;
}

void Validate(const MarkovGame& game) {
  Require(game.num_states > 0 && game.num_players() > 0, ErrorCode::kValidation,
          "empty game");
  for (int a : game.num_actions) {
    Require(a > 0, ErrorCode::kValidation, "player with no actions");
  }
  const int joint = game.num_joint_actions();
  const size_t n = static_cast<size_t>(game.num_states) * joint * game.num_states;
  Require(game.transition.size() == n, ErrorCode::kValidation,
          "transition tensor size mismatch");
  Require(static_cast<int>(game.reward.size()) == game.num_players(),
          ErrorCode::kValidation, "need one reward tensor per player");
  for (const auto& r : game.reward) {
    Require(r.size() == n, ErrorCode::kValidation, "reward tensor size mismatch");
    for (double v : r) {
      Require(std::isfinite(v), ErrorCode::kValidation, "non-finite reward");
    }
  }
  Require(static_cast<int>(game.terminal.size()) == game.num_states,
          ErrorCode::kValidation, "terminal mask has wrong length");
  Require(game.discount >= 0.0 && game.discount < 1.0, ErrorCode::kDomain,
          "game discount must lie in [0,1)");
  ValidateRows(game.transition, game.num_states * joint, game.num_states, "game");
  ValidateInitial(game.initial_dist, game.num_states);
}

PotentialTable::PotentialTable(std::vector<double> values, std::vector<bool> terminal)
    : values_(std::move(values)), terminal_(std::move(terminal)) {
  Require(values_.size() == terminal_.size(), ErrorCode::kDimension,
          "potential length " + std::to_string(values_.size()) +
              " != state count " + std::to_string(terminal_.size()));
  for (size_t s = 0; s < values_.size(); ++s) {
    if (terminal_[s]) values_[s] = 0.0;
  }
}

PotentialTable PotentialTable::Zero(const std::vector<bool>& terminal) {
  return PotentialTable(std::vector<double>(terminal.size(), 0.0), terminal);
}

TabularMDP RandomMdp(const RandomMdpOptions& options, Rng& rng) {
  TabularMDP mdp;
  mdp.num_states = options.num_states;
  mdp.num_actions = options.num_actions;
  mdp.discount = options.discount;
  const int S = options.num_states;
  const int A = options.num_actions;
  mdp.terminal.assign(S, false);
  for (int k = 0; k < options.num_terminals && k < S; ++k) mdp.terminal[S - 1 - k] = true;
  mdp.transition.assign(static_cast<size_t>(S) * A * S, 0.0);
  mdp.reward.assign(mdp.transition.size(), 0.0);
  for (int s = 0; s < S; ++s) {
    for (int a = 0; a < A; ++a) {
      if (mdp.terminal[s]) {
        mdp.transition[mdp.Index(s, a, s)] = 1.0;
        continue;
      }
      const auto row = RandomRow(S, rng);
      for (int t = 0; t < S; ++t) {
        mdp.transition[mdp.Index(s, a, t)] = row[t];
        mdp.reward[mdp.Index(s, a, t)] = rng.Uniform(-1.0, 1.0);
      }
    }
  }
  // Start only in non-terminal states.
  const int live = S - options.num_terminals;
  mdp.initial_dist.assign(S, 0.0);
  if (live > 0) {
    const auto init = RandomRow(live, rng);
    for (int s = 0; s < live; ++s) mdp.initial_dist[s] = init[s];
  } else {
    mdp.initial_dist = RandomRow(S, rng);
  }
  return mdp;
}

PotentialTable RandomPotential(const std::vector<bool>& terminal, Rng& rng) {
  std::vector<double> values(terminal.size());
  for (double& v : values) v = rng.Uniform(-1.0, 1.0);
  return PotentialTable(std::move(values), terminal);
}

MarkovGame RandomGame(const RandomGameOptions& options, Rng& rng) {
  MarkovGame game;
  game.num_states = options.num_states;
  game.num_actions.assign(options.num_players, options.num_actions);
  game.discount = options.discount;
  const int S = options.num_states;
  const int J = game.num_joint_actions();
  game.terminal.assign(S, false);
  for (int k = 0; k < options.num_terminals && k < S - 1; ++k) game.terminal[S - 1 - k] = true;
  game.transition.assign(static_cast<size_t>(S) * J * S, 0.0);
  game.reward.assign(options.num_players, std::vector<double>(game.transition.size(), 0.0));
  for (int s = 0; s < S; ++s) {
    for (int j = 0; j < J; ++j) {
      if (game.terminal[s]) {
        game.transition[game.Index(s, j, s)] = 1.0;
        continue;
      }
      const auto row = RandomRow(S, rng);
      for (int t = 0; t < S; ++t) {
        game.transition[game.Index(s, j, t)] = row[t];
        for (auto& r : game.reward) r[game.Index(s, j, t)] = rng.Uniform(-1.0, 1.0);
      }
    }
  }
  int live = 0;
  for (bool t : game.terminal) live += t ? 0 : 1;
  const auto init = RandomRow(live, rng);
  game.initial_dist.assign(S, 0.0);
  for (int s = 0, k = 0; s < S; ++s) {
    if (!game.terminal[s]) game.initial_dist[s] = init[k++];
  }
  return game;
}

Trajectory SampleEpisode(const TabularMDP& mdp, int max_steps, Rng& rng) {
  Trajectory traj;
  int s = static_cast<int>(rng.Categorical(mdp.initial_dist));
  for (int t = 0; t < max_steps && !mdp.terminal[s]; ++t) {
    const int a = static_cast<int>(rng.UniformInt(mdp.num_actions));
    std::vector<double> row(mdp.num_states);
    for (int n = 0; n < mdp.num_states; ++n) row[n] = mdp.P(s, a, n);
    const int next = static_cast<int>(rng.Categorical(row));
    traj.steps.push_back({s, a, mdp.R(s, a, next), next});
    s = next;
  }
  return traj;
}

}  // namespace rewardlab::tabular
