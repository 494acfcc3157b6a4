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

#ifndef REWARDLAB_TABULAR_MDP_H_
#define REWARDLAB_TABULAR_MDP_H_

#include <cstdint>
#include <vector>

#include "rewardlab/common/rng.h"

namespace rewardlab::tabular {

// Finite MDP with dense tensors indexed [s][a][s'] (row-major).
//
// Terminal states must be absorbing: every action self-loops with zero reward.
// The discount may be 1 structurally (shaping identities are stated for it);
// solvers that need a contraction reject it.
struct TabularMDP {
  int num_states = 0;
  int num_actions = 0;
  std::vector<double> transition;  // P(s'|s,a)
  std::vector<double> reward;      // r(s,a,s')
  double discount = 0.9;
  std::vector<bool> terminal;
  std::vector<double> initial_dist;

  size_t Index(int s, int a, int next) const {
    return (static_cast<size_t>(s) * num_actions + a) * num_states + next;
  }
  double P(int s, int a, int next) const { return transition[Index(s, a, next)]; }
  double R(int s, int a, int next) const { return reward[Index(s, a, next)]; }
};

// Throws Error(kValidation) when any invariant of TabularMDP is violated:
// stochastic rows (1e-12), absorbing zero-reward terminals, initial
// distribution summing to 1, discount in [0,1].
void Validate(const TabularMDP& mdp);

// General-sum Markov game over joint actions. Joint action index is
// mixed-radix with player 0 as the most significant digit.
struct MarkovGame {
  int num_states = 0;
  std::vector<int> num_actions;               // per player
  std::vector<double> transition;             // [s][joint][s']
  std::vector<std::vector<double>> reward;    // per player, [s][joint][s']
  double discount = 0.9;
  std::vector<bool> terminal;
  std::vector<double> initial_dist;

  int num_players() const { return static_cast<int>(num_actions.size()); }
  int num_joint_actions() const;
  int JointIndex(const std::vector<int>& actions) const;
  size_t Index(int s, int joint, int next) const {
    return (static_cast<size_t>(s) * num_joint_actions() + joint) * num_states + next;
  }
};

void Validate(const MarkovGame& game);

// State potential with terminal entries pinned to zero.
class PotentialTable {
 public:
  // Terminal entries of `values` are overwritten with 0. Throws kDimension
  // when the two vectors disagree in length.
  PotentialTable(std::vector<double> values, std::vector<bool> terminal);

  static PotentialTable Zero(const std::vector<bool>& terminal);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int s) const { return values_[s]; }
  bool IsTerminal(int s) const { return terminal_[s]; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<bool>& terminal() const { return terminal_; }

 private:
  std::vector<double> values_;
  std::vector<bool> terminal_;
};

struct Step {
  int state = 0;
  int action = 0;
  double reward = 0.0;
  int next_state = 0;
};

struct Trajectory {
  std::vector<Step> steps;
  int horizon() const { return static_cast<int>(steps.size()); }
};

// Random instance generation: rewards U[-1,1], transition rows are uniform
// draws normalized to sum 1, potentials U[-1,1].
struct RandomMdpOptions {
  int num_states = 5;
  int num_actions = 2;
  int num_terminals = 0;  // the last `num_terminals` states are terminal
  double discount = 0.9;
};

TabularMDP RandomMdp(const RandomMdpOptions& options, Rng& rng);
PotentialTable RandomPotential(const std::vector<bool>& terminal, Rng& rng);

struct RandomGameOptions {
  int num_states = 2;
  int num_players = 2;
  int num_actions = 2;  // per player
  int num_terminals = 1;
  double discount = 0.9;
};

MarkovGame RandomGame(const RandomGameOptions& options, Rng& rng);

// Samples an episode under the uniform random policy until a terminal state
// is reached or `max_steps` transitions were taken.
Trajectory SampleEpisode(const TabularMDP& mdp, int max_steps, Rng& rng);

}  // namespace rewardlab::tabular

#endif  // REWARDLAB_TABULAR_MDP_H_
