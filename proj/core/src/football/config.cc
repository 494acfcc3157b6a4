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

#include "rewardlab/football/config.h"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "rewardlab/common/error.h"

namespace rewardlab::football {

void EnvConfig::Validate() const {
  Require(width >= 8 && height >= 6, ErrorCode::kConfig, "pitch must be at least 8x6");
  Require(goal_width >= 1 && goal_width <= height, ErrorCode::kConfig,
          "goal width must lie in [1, height]");
  Require(home_players >= 1 && away_players >= 1, ErrorCode::kConfig,
          "team sizes must be >= 1");
  // Each role line must fit across the pitch.
  const int biggest = (std::max(home_players, away_players) + 2) / 3;
  Require(biggest <= height && home_players + away_players + 2 <= width * height / 4,
          ErrorCode::kConfig, "team sizes exceed pitch capacity");
  Require(episode_limit >= 1, ErrorCode::kConfig, "episode limit must be >= 1");
  Require(difficulty >= 0.0 && difficulty <= 1.0, ErrorCode::kConfig,
          "difficulty must lie in [0,1]");
  auto prob = [](double p, const char* name) {
    Require(p >= 0.0 && p <= 1.0, ErrorCode::kConfig, std::string(name) + " must lie in [0,1]");
  };
  prob(pass_base, "pass_base");
  prob(intercept_base, "intercept_base");
  prob(shot_max, "shot_max");
  prob(keeper_save, "keeper_save");
  prob(tackle_base, "tackle_base");
  Require(pass_decay >= 0.0 && shot_range > 0.0, ErrorCode::kConfig,
          "pass_decay must be >= 0 and shot_range > 0");
  Require(pass_window >= 1, ErrorCode::kConfig, "pass_window must be >= 1");
}

void to_json(nlohmann::json& j, const EnvConfig& c) {
  j = {{"width", c.width},
       {"height", c.height},
       {"goal_width", c.goal_width},
       {"home_players", c.home_players},
       {"away_players", c.away_players},
       {"goalkeepers", c.goalkeepers},
       {"episode_limit", c.episode_limit},
       {"difficulty", c.difficulty},
       {"pass_base", c.pass_base},
       {"pass_decay", c.pass_decay},
       {"intercept_base", c.intercept_base},
       {"shot_max", c.shot_max},
       {"shot_range", c.shot_range},
       {"keeper_save", c.keeper_save},
       {"tackle_base", c.tackle_base},
       {"concede_penalty", c.concede_penalty},
       {"terminate_on_out", c.terminate_on_out},
       {"pass_window", c.pass_window},
       {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, EnvConfig& c) {
  const nlohmann::json defaults = EnvConfig{};
  for (const auto& [key, value] : j.items()) {
    Require(defaults.contains(key), ErrorCode::kConfig, "unknown env config key '" + key + "'");
  }
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("width", c.width);
  get("height", c.height);
  get("goal_width", c.goal_width);
  get("home_players", c.home_players);
  get("away_players", c.away_players);
  get("goalkeepers", c.goalkeepers);
  get("episode_limit", c.episode_limit);
  get("difficulty", c.difficulty);
  get("pass_base", c.pass_base);
  get("pass_decay", c.pass_decay);
  get("intercept_base", c.intercept_base);
  get("shot_max", c.shot_max);
  get("shot_range", c.shot_range);
  get("keeper_save", c.keeper_save);
  get("tackle_base", c.tackle_base);
  get("concede_penalty", c.concede_penalty);
  get("terminate_on_out", c.terminate_on_out);
  get("pass_window", c.pass_window);
  get("seed", c.seed);
}

EnvConfig LoadEnvConfig(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kIo, "cannot open env config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kConfig, path + ": " + e.what());
  }
  // A config file may hold the env settings at top level or under "env".
  EnvConfig config = j.contains("env") ? j.at("env").get<EnvConfig>() : j.get<EnvConfig>();
  config.Validate();
  return config;
}

}  // namespace rewardlab::football
