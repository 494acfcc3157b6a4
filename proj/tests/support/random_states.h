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

#ifndef REWARDLAB_TESTS_SUPPORT_RANDOM_STATES_H_
#define REWARDLAB_TESTS_SUPPORT_RANDOM_STATES_H_

#include "rewardlab/common/rng.h"
#include "rewardlab/football/config.h"
#include "rewardlab/football/env.h"
#include "rewardlab/football/match_state.h"

namespace rewardlab::testing {

// Kickoff layout with every player and the ball scattered uniformly. The
// ball is held by a random player half of the time.
inline football::MatchState RandomState(const football::EnvConfig& config, Rng& rng) {
  football::MatchState s = football::KickoffState(config, rng.NextU64());
  auto cell = [&] {
    return football::Cell{static_cast<int>(rng.UniformInt(s.width)),
                          static_cast<int>(rng.UniformInt(s.height))};
  };
  for (auto& p : s.players) p.pos = cell();
  if (rng.Uniform() < 0.5) {
    s.ball.holder = static_cast<int>(rng.UniformInt(s.players.size()));
    s.ball.pos = s.players[s.ball.holder].pos;
    s.possession = s.players[s.ball.holder].team;
  } else {
    s.ball.holder = -1;
    s.ball.pos = cell();
  }
  s.t = static_cast<int>(rng.UniformInt(s.episode_limit));
  return s;
}

}  // namespace rewardlab::testing

#endif  // REWARDLAB_TESTS_SUPPORT_RANDOM_STATES_H_
