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

#ifndef REWARDLAB_FOOTBALL_MATCH_STATE_H_
#define REWARDLAB_FOOTBALL_MATCH_STATE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace rewardlab::football {

// Integer pitch cell. x runs along the pitch (home attacks toward x = W-1),
// y across it.
struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

inline int Chebyshev(Cell a, Cell b) {
  const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  return dx > dy ? dx : dy;
}

enum class Team { kHome = 0, kAway = 1 };
enum class Role { kGoalkeeper = 0, kDefender = 1, kMidfielder = 2, kForward = 3 };

inline Team Opponent(Team t) { return t == Team::kHome ? Team::kAway : Team::kHome; }
std::string_view TeamName(Team t);
std::string_view RoleName(Role r);

struct Player {
  int id = 0;
  Team team = Team::kHome;
  Role role = Role::kMidfielder;
  Cell pos;
};

struct Ball {
  Cell pos;
  int holder = -1;   // player id, -1 when loose
  Cell kick{0, 0};   // displacement of a kick made during the last step
};

enum class TerminationCause { kNone = 0, kGoal, kOut, kStepLimit };
std::string_view CauseName(TerminationCause cause);

// Complete game state. Players are stored home first (goalkeeper, then
// outfield in role order), then away in the same order; `id` equals the index.
struct MatchState {
  int width = 24;
  int height = 16;
  int goal_lo = 6;  // goal mouth rows [goal_lo, goal_hi]
  int goal_hi = 9;
  int episode_limit = 300;

  std::vector<Player> players;
  Ball ball;
  int t = 0;
  int home_score = 0;
  int away_score = 0;

  // Team of the last player to hold the ball.
  Team possession = Team::kHome;
  // Consecutive steps the current home holder has kept the ball (0 if none).
  int dribble_streak = 0;
  // Steps at which home completed passes, oldest first, trimmed to a window.
  std::vector<int> recent_home_passes;

  bool done = false;
  TerminationCause cause = TerminationCause::kNone;

  const Player& holder() const { return players.at(ball.holder); }
  bool HomeHasBall() const {
    return ball.holder >= 0 && players[ball.holder].team == Team::kHome;
  }
  bool AwayHasBall() const {
    return ball.holder >= 0 && players[ball.holder].team == Team::kAway;
  }
  int CountTeam(Team team) const;
  // Ids of a team's outfield players, in storage order.
  std::vector<int> Outfield(Team team) const;
  // Id of a team's goalkeeper or -1.
  int Goalkeeper(Team team) const;
  bool InPitch(Cell c) const { return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height; }
  Cell Clamp(Cell c) const;
  bool IsGoalRow(int y) const { return y >= goal_lo && y <= goal_hi; }
  // Chebyshev distance to the nearest goal-mouth cell of the goal `team`
  // attacks (x = W-1 for home, x = 0 for away).
  int DistanceToTargetGoal(Cell c, Team team) const;
};

void to_json(nlohmann::json& j, const Cell& c);
void from_json(const nlohmann::json& j, Cell& c);
void to_json(nlohmann::json& j, const MatchState& s);
void from_json(const nlohmann::json& j, MatchState& s);

// Canonical serialization; identical states give identical strings.
std::string SerializeState(const MatchState& state);

}  // namespace rewardlab::football

#endif  // REWARDLAB_FOOTBALL_MATCH_STATE_H_
