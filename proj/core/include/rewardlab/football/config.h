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

#ifndef REWARDLAB_FOOTBALL_CONFIG_H_
#define REWARDLAB_FOOTBALL_CONFIG_H_

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace rewardlab::football {

// Environment settings. Every stochastic outcome is a closed-form function of
// these constants, a distance, and (for the away side) `difficulty`:
//
//   pass success      clamp(pass_base - pass_decay * d, 0.05, 1)
//   interception      per opponent within 1 cell of the pass line:
//                       away interceptor: intercept_base * (0.5 + difficulty)
//                       home interceptor: intercept_base
//   shot on target    shot_max * exp(-max(0, d - 1) / shot_range)
//                     (d = Chebyshev distance to the nearest goal-mouth cell)
//   keeper save       keeper_save * (0.5 + 0.5 * difficulty) for the away
//                     keeper, keeper_save * 0.5 for the home keeper
//   tackle            per adjacent opponent:
//                       away tackler: tackle_base * (0.25 + 0.75 * difficulty)
//                       home tackler: tackle_base * 0.5
struct EnvConfig {
  int width = 24;
  int height = 16;
  int goal_width = 4;
  int home_players = 3;  // outfield, controlled
  int away_players = 3;  // outfield, scripted
  bool goalkeepers = true;
  int episode_limit = 300;
  double difficulty = 0.3;

  double pass_base = 0.95;
  double pass_decay = 0.03;
  double intercept_base = 0.25;
  double shot_max = 0.9;
  double shot_range = 3.0;
  double keeper_save = 0.5;
  double tackle_base = 0.3;

  bool concede_penalty = false;   // r_env = -1 when away scores
  bool terminate_on_out = false;  // end the episode on a ball-out turnover
  int pass_window = 20;           // steps kept in recent_home_passes

  uint64_t seed = 0;

  // Throws Error(kConfig) on out-of-range values.
  void Validate() const;
};

void to_json(nlohmann::json& j, const EnvConfig& c);
// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, EnvConfig& c);

EnvConfig LoadEnvConfig(const std::string& path);

}  // namespace rewardlab::football

#endif  // REWARDLAB_FOOTBALL_CONFIG_H_
