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

#include "rewardlab/shaping/rules.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rewardlab/common/error.h"

namespace rewardlab::shaping::rules {

using football::Cell;
using football::Role;
using football::Team;

namespace {

double MeanX(const MatchState& s, const std::vector<int>& ids) {
  double sum = 0.0;
  for (int id : ids) sum += s.players[id].pos.x;
  return sum / static_cast<double>(ids.size());
}

// Angle of the least-squares fit x = a + b*y; 0 when y does not vary.
double LineAngle(const MatchState& s, const std::vector<int>& ids) {
  if (ids.size() < 2) return 0.0;
  double my = 0.0, mx = 0.0;
  for (int id : ids) {
    my += s.players[id].pos.y;
    mx += s.players[id].pos.x;
  }
  my /= ids.size();
  mx /= ids.size();
  double syy = 0.0, sxy = 0.0;
  for (int id : ids) {
    const double dy = s.players[id].pos.y - my;
    syy += dy * dy;
    sxy += dy * (s.players[id].pos.x - mx);
  }
  if (syy == 0.0) return std::numbers::pi / 2;  // stacked along x
  return std::atan(sxy / syy);
}

}  // namespace

double HasAdvantage(const MatchState& s, const RuleConstants& c) {
  const double possession = s.HomeHasBall() ? 1.0 : s.AwayHasBall() ? 0.0 : 0.5;
  const std::vector<int> home = s.Outfield(Team::kHome);
  const double territory = home.empty() ? 0.5 : MeanX(s, home) / (s.width - 1);
  return c.possession_weight * possession + c.territory_weight * territory;
}

double BallLocation(const MatchState& s, const RuleConstants&) {
  int d_max = 0;
  for (Cell corner : {Cell{0, 0}, Cell{0, s.height - 1}}) {
    d_max = std::max(d_max, s.DistanceToTargetGoal(corner, Team::kHome));
  }
  const int d = s.DistanceToTargetGoal(s.ball.pos, Team::kHome);
  return 1.0 - static_cast<double>(d) / d_max;
}

double CorrectFormation(const MatchState& s, const RuleConstants& c) {
  std::vector<std::vector<int>> lines;
  for (Role role : {Role::kDefender, Role::kMidfielder, Role::kForward}) {
    std::vector<int> line;
    for (int id : s.Outfield(Team::kHome)) {
      if (s.players[id].role == role) line.push_back(id);
    }
    if (!line.empty()) lines.push_back(std::move(line));
  }
  if (lines.empty()) return 1.0;

  double a_min = INFINITY, a_max = -INFINITY;
  for (const auto& line : lines) {
    const double a = LineAngle(s, line);
    a_min = std::min(a_min, a);
    a_max = std::max(a_max, a);
  }
  const double angle_penalty = (a_max - a_min) / std::numbers::pi;

  double spacing_penalty = 0.0, order_penalty = 0.0;
  if (lines.size() >= 2) {
    std::vector<double> gaps;
    for (size_t k = 1; k < lines.size(); ++k) {
      gaps.push_back(MeanX(s, lines[k]) - MeanX(s, lines[k - 1]));
    }
    double mean = 0.0;
    for (double g : gaps) mean += g;
    mean /= gaps.size();
    double var = 0.0;
    int disordered = 0;
    for (double g : gaps) {
      var += (g - mean) * (g - mean);
      if (g <= 0.0) ++disordered;
    }
    var /= gaps.size();
    const double span = s.width - 1.0;
    spacing_penalty = var / (span * span);
    order_penalty = static_cast<double>(disordered) / gaps.size();
  }
  return 1.0 - c.formation_angle_weight * angle_penalty -
         c.formation_spacing_weight * spacing_penalty - c.formation_order_weight * order_penalty;
}

double EncourageDribbling(const MatchState& s, const RuleConstants& c) {
  return static_cast<double>(std::min(s.dribble_streak, c.dribble_cap)) / c.dribble_cap;
}

double EncourageAttack(const MatchState& s, const RuleConstants& c) {
  const std::vector<int> home = s.Outfield(Team::kHome);
  double third = 0.0;
  if (!home.empty()) {
    int forward = 0;
    for (int id : home) {
      if (3 * s.players[id].pos.x >= 2 * s.width) ++forward;
    }
    third = static_cast<double>(forward) / home.size();
  }
  const double ball = s.HomeHasBall() ? static_cast<double>(s.ball.pos.x) / (s.width - 1) : 0.0;
  return c.attack_third_weight * third + c.attack_ball_weight * ball;
}

double EncourageDefense(const MatchState& s, const RuleConstants&) {
  if (3 * s.ball.pos.x >= s.width) return 1.0;
  const std::vector<int> home = s.Outfield(Team::kHome);
  if (home.empty()) return 1.0;
  int goal_side = 0;
  for (int id : home) {
    if (s.players[id].pos.x <= s.ball.pos.x) ++goal_side;
  }
  return static_cast<double>(goal_side) / home.size();
}

double EncouragePassing(const MatchState& s, const RuleConstants& c) {
  const int n = static_cast<int>(s.recent_home_passes.size());
  return static_cast<double>(std::min(n, c.pass_cap)) / c.pass_cap;
}

namespace {

struct Entry {
  std::string_view id;
  RuleFn fn;
};

constexpr Entry kRules[] = {
    {"has-advantage", HasAdvantage},
    {"ball-location", BallLocation},
    {"correct-formation", CorrectFormation},
    {"encourage-dribbling", EncourageDribbling},
    {"encourage-attack", EncourageAttack},
    {"encourage-defense", EncourageDefense},
    {"encourage-passing", EncouragePassing},
};

}  // namespace

RuleFn FindRule(std::string_view id) {
  for (const Entry& e : kRules) {
    if (e.id == id) return e.fn;
  }
  Fail(ErrorCode::kLookup, "unknown rule '" + std::string(id) + "'");
}

std::vector<std::string_view> RuleIds() {
  std::vector<std::string_view> ids;
  for (const Entry& e : kRules) ids.push_back(e.id);
  return ids;
}

}  // namespace rewardlab::shaping::rules
