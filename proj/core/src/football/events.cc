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

#include "rewardlab/football/events.h"

#include <nlohmann/json.hpp>

#include "rewardlab/common/error.h"

namespace rewardlab::football {

std::string_view EventKindName(EventKind kind) {
  switch (kind) {
    case EventKind::kPass: return "pass";
    case EventKind::kShot: return "shot";
    case EventKind::kGoal: return "goal";
    case EventKind::kPossessionChange: return "possession_change";
    case EventKind::kOut: return "out";
  }
  return "?";
}

void to_json(nlohmann::json& j, const MatchEvent& e) {
  j = {{"step", e.step},   {"kind", EventKindName(e.kind)},
       {"team", TeamName(e.team)}, {"player", e.player},
       {"target", e.target}, {"from", e.from},
       {"to", e.to},       {"success", e.success}};
}

void from_json(const nlohmann::json& j, MatchEvent& e) {
  e.step = j.at("step").get<int>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "pass") {
    e.kind = EventKind::kPass;
  } else if (kind == "shot") {
    e.kind = EventKind::kShot;
  } else if (kind == "goal") {
    e.kind = EventKind::kGoal;
  } else if (kind == "possession_change") {
    e.kind = EventKind::kPossessionChange;
  } else if (kind == "out") {
    e.kind = EventKind::kOut;
  } else {
    Fail(ErrorCode::kInput, "unknown event kind '" + kind + "'");
  }
  e.team = j.at("team").get<std::string>() == "home" ? Team::kHome : Team::kAway;
  e.player = j.at("player").get<int>();
  e.target = j.at("target").get<int>();
  e.from = j.at("from").get<Cell>();
  e.to = j.at("to").get<Cell>();
  e.success = j.at("success").get<bool>();
}

EventCounts CountEvents(const std::vector<MatchEvent>& events, Team team) {
  EventCounts c;
  for (const MatchEvent& e : events) {
    if (e.team != team) continue;
    switch (e.kind) {
      case EventKind::kPass:
        ++c.pass_attempts;
        if (e.success) ++c.pass_successes;
        break;
      case EventKind::kShot: ++c.shots; break;
      case EventKind::kGoal: ++c.goals; break;
      case EventKind::kPossessionChange: ++c.possession_changes; break;
      case EventKind::kOut: ++c.outs; break;
    }
  }
  return c;
}

}  // namespace rewardlab::football
