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

#include "rewardlab/football/match_state.h"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace rewardlab::football {

std::string_view TeamName(Team t) { return t == Team::kHome ? "home" : "away"; }

std::string_view RoleName(Role r) {
  switch (r) {
    case Role::kGoalkeeper: return "GK";
    case Role::kDefender: return "DEF";
    case Role::kMidfielder: return "MID";
    case Role::kForward: return "FWD";
  }
  return "?";
}

std::string_view CauseName(TerminationCause cause) {
  switch (cause) {
    case TerminationCause::kNone: return "none";
    case TerminationCause::kGoal: return "goal";
    case TerminationCause::kOut: return "turnover-out";
    case TerminationCause::kStepLimit: return "step-limit";
  }
  return "?";
}

int MatchState::CountTeam(Team team) const {
  return static_cast<int>(std::count_if(players.begin(), players.end(),
                                        [team](const Player& p) { return p.team == team; }));
}

std::vector<int> MatchState::Outfield(Team team) const {
  std::vector<int> ids;
  for (const Player& p : players) {
    if (p.team == team && p.role != Role::kGoalkeeper) ids.push_back(p.id);
  }
  return ids;
}

int MatchState::Goalkeeper(Team team) const {
  for (const Player& p : players) {
    if (p.team == team && p.role == Role::kGoalkeeper) return p.id;
  }
  return -1;
}

Cell MatchState::Clamp(Cell c) const {
  return {std::clamp(c.x, 0, width - 1), std::clamp(c.y, 0, height - 1)};
}

int MatchState::DistanceToTargetGoal(Cell c, Team team) const {
  const int goal_x = team == Team::kHome ? width - 1 : 0;
  const int dx = std::abs(c.x - goal_x);
  int dy = 0;
  if (c.y < goal_lo) dy = goal_lo - c.y;
  if (c.y > goal_hi) dy = c.y - goal_hi;
  return std::max(dx, dy);
}

void to_json(nlohmann::json& j, const Cell& c) { j = nlohmann::json::array({c.x, c.y}); }
void from_json(const nlohmann::json& j, Cell& c) {
  c.x = j.at(0).get<int>();
  c.y = j.at(1).get<int>();
}

void to_json(nlohmann::json& j, const MatchState& s) {
  nlohmann::json players = nlohmann::json::array();
  for (const Player& p : s.players) {
    players.push_back({{"id", p.id},
                       {"team", TeamName(p.team)},
                       {"role", RoleName(p.role)},
                       {"pos", p.pos}});
  }
  j = {{"width", s.width},
       {"height", s.height},
       {"goal", {s.goal_lo, s.goal_hi}},
       {"limit", s.episode_limit},
       {"players", players},
       {"ball", {{"pos", s.ball.pos}, {"holder", s.ball.holder}, {"kick", s.ball.kick}}},
       {"t", s.t},
       {"score", {s.home_score, s.away_score}},
       {"possession", TeamName(s.possession)},
       {"dribble_streak", s.dribble_streak},
       {"recent_home_passes", s.recent_home_passes},
       {"done", s.done},
       {"cause", CauseName(s.cause)}};
}

void from_json(const nlohmann::json& j, MatchState& s) {
  s.width = j.at("width").get<int>();
  s.height = j.at("height").get<int>();
  s.goal_lo = j.at("goal").at(0).get<int>();
  s.goal_hi = j.at("goal").at(1).get<int>();
  s.episode_limit = j.at("limit").get<int>();
  s.players.clear();
  for (const auto& jp : j.at("players")) {
    Player p;
    p.id = jp.at("id").get<int>();
    p.team = jp.at("team").get<std::string>() == "home" ? Team::kHome : Team::kAway;
    const std::string role = jp.at("role").get<std::string>();
    p.role = role == "GK"    ? Role::kGoalkeeper
             : role == "DEF" ? Role::kDefender
             : role == "MID" ? Role::kMidfielder
                             : Role::kForward;
    p.pos = jp.at("pos").get<Cell>();
    s.players.push_back(p);
  }
  s.ball.pos = j.at("ball").at("pos").get<Cell>();
  s.ball.holder = j.at("ball").at("holder").get<int>();
  s.ball.kick = j.at("ball").at("kick").get<Cell>();
  s.t = j.at("t").get<int>();
  s.home_score = j.at("score").at(0).get<int>();
  s.away_score = j.at("score").at(1).get<int>();
  s.possession = j.at("possession").get<std::string>() == "home" ? Team::kHome : Team::kAway;
  s.dribble_streak = j.at("dribble_streak").get<int>();
  s.recent_home_passes = j.at("recent_home_passes").get<std::vector<int>>();
  s.done = j.at("done").get<bool>();
  const std::string cause = j.at("cause").get<std::string>();
  s.cause = cause == "goal"           ? TerminationCause::kGoal
            : cause == "turnover-out" ? TerminationCause::kOut
            : cause == "step-limit"   ? TerminationCause::kStepLimit
                                      : TerminationCause::kNone;
}

std::string SerializeState(const MatchState& state) {
  return nlohmann::json(state).dump();
}

}  // namespace rewardlab::football
