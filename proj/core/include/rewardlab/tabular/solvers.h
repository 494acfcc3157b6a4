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

#ifndef REWARDLAB_TABULAR_SOLVERS_H_
#define REWARDLAB_TABULAR_SOLVERS_H_

#include <cstdint>
#include <set>
#include <vector>

#include "rewardlab/tabular/mdp.h"

namespace rewardlab::tabular {

struct ValueIterationResult {
  std::vector<double> value;             // V*(s)
  std::vector<double> q;                 // Q*(s,a), row-major [s][a]
  std::vector<std::vector<int>> greedy;  // full argmax set per state
  int iterations = 0;
  double residual = 0.0;                 // final sup-norm Bellman residual
};

// Synchronous value iteration until the sup-norm Bellman residual drops below
// `tol`. Actions within `tie_tol` of the best Q value are all kept in the
// greedy set; terminal states list every action.
//
// Throws kValidation for malformed MDPs, kDomain for discount >= 1 or tol <= 0.
ValueIterationResult ValueIteration(const TabularMDP& mdp, double tol,
                                    double tie_tol = 1e-9, int max_iters = 1000000);

// r'(s,a,s') = r(s,a,s') + discount * phi(s') - phi(s). Returns a new MDP.
// Throws kDimension on a potential of the wrong length.
TabularMDP ShapeMdp(const TabularMDP& mdp, const PotentialTable& phi);

// Forward accumulation: U = sum_t discount^t * r_t, with the running factor
// multiplied after each term. Throws kInput on an empty trajectory.
double TrajectoryReturn(const Trajectory& traj, double discount);

struct ReturnIdentity {
  double unshaped = 0.0;  // U
  double shaped = 0.0;    // U'
  double residual = 0.0;  // |U' - (U - phi(s_0))|
};

// Evaluates the shaped return by its own forward sum and compares it with the
// closed form U - phi(s_0). Throws kPrecondition unless the final next_state
// is terminal in `phi`'s mask; kInput on an empty trajectory.
ReturnIdentity ShapedReturnIdentityCheck(const Trajectory& traj, const PotentialTable& phi,
                                         double discount);

// Deterministic stationary profile: one action per non-terminal state for each
// player; entries for terminal states are fixed at 0.
using Profile = std::vector<std::vector<int>>;

struct NashOptions {
  double tolerance = 1e-9;
  // Maximum number of joint deterministic profiles, i.e. prod_i A_i^L with L
  // the number of non-terminal states.
  uint64_t max_profiles = 1u << 20;
};

// Expected discounted return of each player from the initial distribution.
std::vector<double> EvaluateProfile(const MarkovGame& game, const Profile& profile);

// All deterministic profiles where no player has a strictly profitable
// (by more than `tolerance`) deterministic unilateral deviation.
// Throws kSize when the profile count exceeds `max_profiles`.
std::set<Profile> EnumerateDeterministicNash(const MarkovGame& game,
                                             const NashOptions& options = {});

// Adds discount * phi(s') - phi(s) to the reward tensor of every listed player.
MarkovGame ShapeGame(const MarkovGame& game, const std::vector<int>& players,
                     const PotentialTable& phi);

struct TdCheckOptions {
  double learning_rate = 0.1;
  uint64_t seed = 0;
};

// Runs two TD(0) learners on one shared transition stream (uniform random
// behaviour policy, episodes restarted from the initial distribution): the
// plain learner starts at V0, the shaped one at V0 - phi and sees the shaped
// reward. Returns the max over steps of |delta_plain - delta_shaped|.
double TdUpdateEquivalenceCheck(const TabularMDP& mdp, const PotentialTable& phi, int steps,
                                const TdCheckOptions& options);

}  // namespace rewardlab::tabular

#endif  // REWARDLAB_TABULAR_SOLVERS_H_
