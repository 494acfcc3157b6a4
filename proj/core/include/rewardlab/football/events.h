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

#ifndef REWARDLAB_FOOTBALL_EVENTS_H_
#define REWARDLAB_FOOTBALL_EVENTS_H_

#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rewardlab/football/match_state.h"

namespace rewardlab::football {

enum class EventKind { kPass = 0, kShot, kGoal, kPossessionChange, kOut };
std::string_view EventKindName(EventKind kind);

struct MatchEvent {
  int step = 0;             // clock value before the step that produced it
  EventKind kind = EventKind::kPass;
  Team team = Team::kHome;  // acting team (gaining team for possession changes)
  int player = -1;          // actor (new holder for possession changes)
  int target = -1;          // intended receiver of a pass
  Cell from;
  Cell to;
  bool success = false;     // pass completed / shot scored
};

void to_json(nlohmann::json& j, const MatchEvent& e);
void from_json(const nlohmann::json& j, MatchEvent& e);

struct EventCounts {
  int pass_attempts = 0;
  int pass_successes = 0;
  int shots = 0;
  int goals = 0;
  int possession_changes = 0;
  int outs = 0;
};

// Counts events of one team (possession changes count when `team` gains).
EventCounts CountEvents(const std::vector<MatchEvent>& events, Team team);

}  // namespace rewardlab::football

#endif  // REWARDLAB_FOOTBALL_EVENTS_H_
