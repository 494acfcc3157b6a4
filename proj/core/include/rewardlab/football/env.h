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

#ifndef REWARDLAB_FOOTBALL_ENV_H_
#define REWARDLAB_FOOTBALL_ENV_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rewardlab/common/rng.h"
#include "rewardlab/football/config.h"
#include "rewardlab/football/events.h"
#include "rewardlab/football/match_state.h"

namespace rewardlab::football {

// Discrete action set shared by every player.
//
//   0      idle
//   1..8   move N, NE, E, SE, S, SW, W, NW (N is y-1, E is x+1)
//   9      short pass to the nearest teammate (own keeper only as last resort)
//   10     long pass to the most advanced outfield teammate
//   11     shot at the goal the player's team attacks
//
// Kick actions by a player without the ball act as idle.
enum Action : int {
  kIdle = 0,
  kMoveN,
  kMoveNE,
  kMoveE,
  kMoveSE,
  kMoveS,
  kMoveSW,
  kMoveW,
  kMoveNW,
  kShortPass,
  kLongPass,
  kShot,
};
inline constexpr int kNumActions = 12;

// Displacement of a move action; {0,0} for idle and kicks.
Cell ActionDelta(int action);
// Move action whose displacement is (sign(dx), sign(dy)).
int MoveToward(Cell from, Cell to);

using Observation = std::vector<double>;

// 2 (own position) + 1 (clock) + 2 (ball) + 2 (ball relative to self)
// + 3 (holder is self / teammate / opponent)
// + 2 * (home players - 1) + 2 * away players, keepers included.
int ObservationSize(const EnvConfig& config);
// Per-agent observation, every entry in [-1, 1].
Observation Observe(const MatchState& state, int player_id);

// Positions of all players and the ball, holder one-hot (players + loose),
// possession flag and clock; used by the optional centralized critic.
int GlobalStateSize(const EnvConfig& config);
std::vector<double> GlobalState(const MatchState& state);

// Kickoff layout: home keeper at (0, H/2), outfield lines at x = W/5 (DEF),
// W/3 (MID) and W/2 - 1 (FWD), rows spread evenly with a seeded +-1 jitter;
// away mirrored. The home forward nearest the centre starts on the centre
// spot (W/2 - 1, H/2) with the ball. Throws kConfig on invalid configs.
MatchState KickoffState(const EnvConfig& config, uint64_t seed);

struct StepResult {
  double reward = 0.0;
  bool done = false;
  TerminationCause cause = TerminationCause::kNone;
  std::vector<MatchEvent> events;
  std::vector<int> actions;  // every player's action, by player id
};

struct ResetResult {
  MatchState state;
  std::vector<Observation> observations;
};

// Grid football Markov game. Home outfield players are controlled; the home
// keeper and the whole away side are scripted.
//
// One step resolves, in order: scripted actions (away players in id order,
// then the home keeper), the holder's kick, moves in id order (the holder
// carries the ball), pickup of a ball that was loose at step start, then
// tackles on a holder who already had the ball at step start. At most one
// change of holder team happens per step. Random draws are taken in exactly
// that order from the env's own stream.
class FootballEnv {
 public:
  explicit FootballEnv(EnvConfig config);

  ResetResult Reset(uint64_t seed);
  ResetResult Reset() { return Reset(config_.seed); }

  // `actions` holds one action per controlled agent in ControlledIds() order.
  // Throws kInput on a wrong count or action index, kContract after the
  // episode ended.
  StepResult Step(std::span<const int> actions);

  const MatchState& state() const { return state_; }
  const EnvConfig& config() const { return config_; }
  const std::vector<int>& ControlledIds() const { return controlled_; }
  int num_agents() const { return static_cast<int>(controlled_.size()); }
  std::vector<Observation> Observations() const;

 private:
  void ResolveKick(int kicker, int action, StepResult& out);
  void ResolveShot(int kicker, StepResult& out);
  void ResolvePass(int kicker, bool long_pass, StepResult& out);
  void GiveBall(int player, StepResult& out);
  int NearestPlayer(Team team, Cell to, bool include_keeper) const;

  EnvConfig config_;
  MatchState state_;
  Rng rng_;
  std::vector<int> controlled_;
};

// Away side's joint action (indexed like MatchState::players, entries for home
// players are 0). Each away player plays its scripted move with probability
// `difficulty` and a uniformly random action otherwise; one uniform draw is
// taken per player, plus one action draw when the random branch is taken.
//
// Scripted behaviour: keepers hold the goal line tracking the ball and clear
// long. Chasers (the outfield player nearest the ball plus every DEF) step
// along a shortest grid path to the ball; the rest mark the nearest free
// opponent goal-side. A holder shoots within 3 cells of goal, clears long
// when pressed in its own third, lays off short when pressed elsewhere, and
// dribbles toward goal otherwise. Supporters move up 3 cells behind the ball.
std::vector<int> ScriptedOpponent(const MatchState& state, double difficulty, Rng& rng);

// Deterministic scripted action for any player.
int ScriptedAction(const MatchState& state, int player_id);

// Ids that chase the ball under the scripted policy for `team`.
std::vector<int> Chasers(const MatchState& state, Team team);

}  // namespace rewardlab::football

#endif  // REWARDLAB_FOOTBALL_ENV_H_
