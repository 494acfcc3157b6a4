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

#ifndef REWARDLAB_SHAPING_RULES_H_
#define REWARDLAB_SHAPING_RULES_H_

#include <string_view>
#include <vector>

#include "rewardlab/football/match_state.h"
#include "rewardlab/shaping/skill.h"

// Built-in potentials. Each maps a MatchState to [0, 1] from the home
// team's point of view and is deterministic.
namespace rewardlab::shaping::rules {

using football::MatchState;

// possession_weight * P + territory_weight * mean(x) / (W - 1) over home
// outfield players, where P is 1 if home holds the ball, 0 if away does and
// 0.5 when it is loose. Increases with home territory.
double HasAdvantage(const MatchState& s, const RuleConstants& c);

// 1 - d / d_max, d the Chebyshev distance from the ball to the nearest
// cell of the away goal mouth and d_max the largest such distance on the
// pitch. Strictly decreasing in d: 1 on the goal mouth, 0 at the far end.
double BallLocation(const MatchState& s, const RuleConstants& c);

// Home outfield players grouped into role lines (defenders, midfielders,
// forwards). With a = slope angle of x fitted on y per line (0 for a single
// player), g = gaps between consecutive line mean x:
//   1 - w_angle * (max a - min a) / pi
//     - w_spacing * var(g) / (W - 1)^2
//     - w_order * (fraction of g <= 0)
// Maximal (1) for parallel, evenly spaced, correctly ordered lines.
double CorrectFormation(const MatchState& s, const RuleConstants& c);

// min(streak, cap) / cap with streak the current home holder's retention.
double EncourageDribbling(const MatchState& s, const RuleConstants& c);

// third_weight * (fraction of home outfield with x >= 2W/3)
//   + ball_weight * (ball x / (W - 1) while home holds the ball, else 0).
double EncourageAttack(const MatchState& s, const RuleConstants& c);

// When the ball is in the home third (x < W/3): fraction of home outfield
// players goal-side of it (x <= ball x). Otherwise 1.
double EncourageDefense(const MatchState& s, const RuleConstants& c);

// min(passes in window, cap) / cap; increasing in recent completed passes.
double EncouragePassing(const MatchState& s, const RuleConstants& c);

using RuleFn = double (*)(const MatchState&, const RuleConstants&);

// Throws kLookup for an unknown id.
RuleFn FindRule(std::string_view id);
std::vector<std::string_view> RuleIds();

}  // namespace rewardlab::shaping::rules

#endif  // REWARDLAB_SHAPING_RULES_H_
