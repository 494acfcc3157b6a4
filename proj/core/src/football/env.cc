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

#include "rewardlab/football/env.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "rewardlab/common/error.h"

namespace rewardlab::football {
namespace {

constexpr std::array<Cell, 9> kDeltas = {
    Cell{0, 0},  Cell{0, -1}, Cell{1, -1}, Cell{1, 0},  Cell{1, 1},
    Cell{0, 1},  Cell{-1, 1}, Cell{-1, 0}, Cell{-1, -1}};

int Sign(int v) { return (v > 0) - (v < 0); }

double Norm(int v, int extent) {
  return extent > 1 ? 2.0 * v / (extent - 1) - 1.0 : 0.0;
}

double Rel(int dv, int extent) { return extent > 1 ? static_cast<double>(dv) / (extent - 1) : 0.0; }

std::vector<Role> RoleLayout(int outfield) {
  // DEF / MID / FWD group sizes: one forward first, then fill evenly with
  // the remainder going to midfield, then defence.
  int def = outfield / 3, mid = outfield / 3, fwd = outfield / 3;
  int rest = outfield - def - mid - fwd;
  if (outfield == 1) return {Role::kForward};
  if (outfield == 2) return {Role::kDefender, Role::kForward};
  if (rest > 0) { ++mid; --rest; }
  if (rest > 0) { ++def; --rest; }
  std::vector<Role> roles;
  roles.insert(roles.end(), def, Role::kDefender);
  roles.insert(roles.end(), mid, Role::kMidfielder);
  roles.insert(roles.end(), fwd, Role::kForward);
  return roles;
}

// Cells strictly between a and b on the Bresenham segment.
std::vector<Cell> LineInterior(Cell a, Cell b) {
  std::vector<Cell> cells;
  int x0 = a.x, y0 = a.y;
  const int dx = std::abs(b.x - a.x), sx = a.x < b.x ? 1 : -1;
  const int dy = -std::abs(b.y - a.y), sy = a.y < b.y ? 1 : -1;
  int err = dx + dy;
  while (!(x0 == b.x && y0 == b.y)) {
    const int e2 = 2 * err;
    if (e2 >= dy) { err += dy; x0 += sx; }
    if (e2 <= dx) { err += dx; y0 += sy; }
    if (!(x0 == b.x && y0 == b.y)) cells.push_back({x0, y0});
  }
  return cells;
}

}  // namespace

Cell ActionDelta(int action) {
  return action >= 1 && action <= 8 ? kDeltas[action] : Cell{0, 0};
}

int MoveToward(Cell from, Cell to) {
  const Cell d{Sign(to.x - from.x), Sign(to.y - from.y)};
  for (int a = 0; a <= 8; ++a) {
    if (kDeltas[a] == d) return a;
  }
  return kIdle;
}

int ObservationSize(const EnvConfig& config) {
  const int home = config.home_players + (config.goalkeepers ? 1 : 0);
  const int away = config.away_players + (config.goalkeepers ? 1 : 0);
  return 2 + 1 + 2 + 2 + 3 + 2 * (home - 1) + 2 * away;
}

Observation Observe(const MatchState& state, int player_id) {
  const Player& me = state.players.at(player_id);
  const int W = state.width, H = state.height;
  Observation obs;
  obs.reserve(32);
  obs.push_back(Norm(me.pos.x, W));
  obs.push_back(Norm(me.pos.y, H));
  obs.push_back(static_cast<double>(state.t) / state.episode_limit);
  obs.push_back(Norm(state.ball.pos.x, W));
  obs.push_back(Norm(state.ball.pos.y, H));
  obs.push_back(Rel(state.ball.pos.x - me.pos.x, W));
  obs.push_back(Rel(state.ball.pos.y - me.pos.y, H));
  const int holder = state.ball.holder;
  obs.push_back(holder == player_id ? 1.0 : 0.0);
  obs.push_back(holder >= 0 && holder != player_id && state.players[holder].team == me.team ? 1.0
                                                                                           : 0.0);
  obs.push_back(holder >= 0 && state.players[holder].team != me.team ? 1.0 : 0.0);
  for (const Player& p : state.players) {
    if (p.team != me.team || p.id == player_id) continue;
    obs.push_back(Rel(p.pos.x - me.pos.x, W));
    obs.push_back(Rel(p.pos.y - me.pos.y, H));
  }
  for (const Player& p : state.players) {
    if (p.team == me.team) continue;
    obs.push_back(Rel(p.pos.x - me.pos.x, W));
    obs.push_back(Rel(p.pos.y - me.pos.y, H));
  }
  return obs;
}

int GlobalStateSize(const EnvConfig& config) {
  const int n = config.home_players + config.away_players + (config.goalkeepers ? 2 : 0);
  return 2 * n + 2 + (n + 1) + 1 + 1;
}

std::vector<double> GlobalState(const MatchState& state) {
  std::vector<double> g;
  for (const Player& p : state.players) {
    g.push_back(Norm(p.pos.x, state.width));
    g.push_back(Norm(p.pos.y, state.height));
  }
  g.push_back(Norm(state.ball.pos.x, state.width));
  g.push_back(Norm(state.ball.pos.y, state.height));
  for (int i = -1; i < static_cast<int>(state.players.size()); ++i) {
    g.push_back(state.ball.holder == i ? 1.0 : 0.0);
  }
  g.push_back(state.possession == Team::kHome ? 1.0 : -1.0);
  g.push_back(static_cast<double>(state.t) / state.episode_limit);
  return g;
}

MatchState KickoffState(const EnvConfig& config, uint64_t seed) {
  config.Validate();
  Rng rng(DeriveSeed(seed, 0x6b6f));
  MatchState s;
  s.width = config.width;
  s.height = config.height;
  s.goal_lo = (config.height - config.goal_width) / 2;
  s.goal_hi = s.goal_lo + config.goal_width - 1;
  s.episode_limit = config.episode_limit;
  const int W = config.width, H = config.height;

  auto add_team = [&](Team team, int outfield) {
    const bool home = team == Team::kHome;
    auto mirror = [&](int x) { return home ? x : W - 1 - x; };
    if (config.goalkeepers) {
      s.players.push_back({static_cast<int>(s.players.size()), team, Role::kGoalkeeper,
                           {mirror(0), H / 2}});
    }
    const std::vector<Role> roles = RoleLayout(outfield);
    for (Role role : {Role::kDefender, Role::kMidfielder, Role::kForward}) {
      const int count = static_cast<int>(std::count(roles.begin(), roles.end(), role));
      const int x = role == Role::kDefender ? W / 5 : role == Role::kMidfielder ? W / 3 : W / 2 - 1;
      for (int k = 0; k < count; ++k) {
        int y = (k + 1) * H / (count + 1);
        y += static_cast<int>(rng.UniformInt(3)) - 1;
        y = std::clamp(y, 0, H - 1);
        s.players.push_back({static_cast<int>(s.players.size()), team, role, {mirror(x), y}});
      }
    }
  };
  add_team(Team::kHome, config.home_players);
  add_team(Team::kAway, config.away_players);

  // The home forward nearest the centre spot takes the kickoff.
  const Cell centre{W / 2 - 1, H / 2};
  int kicker = -1;
  for (const Player& p : s.players) {
    if (p.team != Team::kHome || p.role == Role::kGoalkeeper) continue;
    if (kicker < 0 || Chebyshev(p.pos, centre) < Chebyshev(s.players[kicker].pos, centre) ||
        (Chebyshev(p.pos, centre) == Chebyshev(s.players[kicker].pos, centre) &&
         p.role > s.players[kicker].role)) {
      kicker = p.id;
    }
  }
  s.players[kicker].pos = centre;
  s.ball.pos = centre;
  s.ball.holder = kicker;
  s.possession = Team::kHome;
  return s;
}

std::vector<int> Chasers(const MatchState& state, Team team) {
  std::vector<int> ids;
  int nearest = -1;
  for (int id : state.Outfield(team)) {
    const Player& p = state.players[id];
    if (nearest < 0 ||
        Chebyshev(p.pos, state.ball.pos) < Chebyshev(state.players[nearest].pos, state.ball.pos)) {
      nearest = id;
    }
  }
  for (int id : state.Outfield(team)) {
    if (id == nearest || state.players[id].role == Role::kDefender) ids.push_back(id);
  }
  return ids;
}

int ScriptedAction(const MatchState& state, int player_id) {
  const Player& me = state.players.at(player_id);
  const Team team = me.team;
  const bool home = team == Team::kHome;
  const int W = state.width;
  const int holder = state.ball.holder;

  if (me.role == Role::kGoalkeeper) {
    if (holder == player_id) return kLongPass;
    const int line_x = home ? 0 : W - 1;
    const Cell target{line_x, std::clamp(state.ball.pos.y, state.goal_lo, state.goal_hi)};
    return MoveToward(me.pos, target);
  }

  if (holder == player_id) {
    const bool pressed = std::any_of(state.players.begin(), state.players.end(), [&](const Player& p) {
      return p.team != team && Chebyshev(p.pos, me.pos) <= 1;
    });
    if (state.DistanceToTargetGoal(me.pos, team) <= 3) return kShot;
    const bool own_third = home ? me.pos.x < W / 3 : me.pos.x >= W - W / 3;
    if (pressed && own_third) return kLongPass;
    if (pressed && state.Outfield(team).size() > 1) return kShortPass;
    const Cell goal{home ? W - 1 : 0, (state.goal_lo + state.goal_hi) / 2};
    return MoveToward(me.pos, goal);
  }

  const bool team_has_ball = holder >= 0 && state.players[holder].team == team;
  if (team_has_ball) {
    const Cell ball = state.ball.pos;
    const int x = std::clamp(home ? ball.x - 3 : ball.x + 3, 0, W - 1);
    return MoveToward(me.pos, {x, me.pos.y});
  }

  const std::vector<int> chasers = Chasers(state, team);
  if (std::find(chasers.begin(), chasers.end(), player_id) != chasers.end()) {
    return MoveToward(me.pos, state.ball.pos);
  }
  // Mark the nearest opponent outfield player other than the holder,
  // standing one cell goal-side of him.
  int mark = -1;
  for (int id : state.Outfield(Opponent(team))) {
    if (id == holder) continue;
    if (mark < 0 || Chebyshev(state.players[id].pos, me.pos) <
                        Chebyshev(state.players[mark].pos, me.pos)) {
      mark = id;
    }
  }
  if (mark < 0) return MoveToward(me.pos, state.ball.pos);
  const Cell m = state.players[mark].pos;
  return MoveToward(me.pos, state.Clamp({home ? m.x - 1 : m.x + 1, m.y}));
}

std::vector<int> ScriptedOpponent(const MatchState& state, double difficulty, Rng& rng) {
  std::vector<int> actions(state.players.size(), kIdle);
  for (const Player& p : state.players) {
    if (p.team != Team::kAway) continue;
    if (rng.Uniform() < difficulty) {
      actions[p.id] = ScriptedAction(state, p.id);
    } else {
      actions[p.id] = static_cast<int>(rng.UniformInt(kNumActions));
    }
  }
  return actions;
}

FootballEnv::FootballEnv(EnvConfig config) : config_(std::move(config)) {
  config_.Validate();
  Reset(config_.seed);
}

ResetResult FootballEnv::Reset(uint64_t seed) {
  state_ = KickoffState(config_, seed);
  rng_ = Rng(DeriveSeed(seed, 0x5374));
  controlled_ = state_.Outfield(Team::kHome);
  return {state_, Observations()};
}

std::vector<Observation> FootballEnv::Observations() const {
  std::vector<Observation> obs;
  obs.reserve(controlled_.size());
  for (int id : controlled_) obs.push_back(Observe(state_, id));
  return obs;
}

int FootballEnv::NearestPlayer(Team team, Cell to, bool include_keeper) const {
  int best = -1;
  for (const Player& p : state_.players) {
    if (p.team != team || (!include_keeper && p.role == Role::kGoalkeeper)) continue;
    if (best < 0 || Chebyshev(p.pos, to) < Chebyshev(state_.players[best].pos, to)) best = p.id;
  }
  return best;
}

void FootballEnv::GiveBall(int player, StepResult& out) {
  const Player& p = state_.players[player];
  state_.ball.holder = player;
  state_.ball.pos = p.pos;
  if (p.team != state_.possession) {
    state_.possession = p.team;
    MatchEvent e;
    e.step = state_.t;
    e.kind = EventKind::kPossessionChange;
    e.team = p.team;
    e.player = player;
    e.from = p.pos;
    e.to = p.pos;
    e.success = true;
    out.events.push_back(e);
  }
}

void FootballEnv::ResolveShot(int kicker, StepResult& out) {
  const Player shooter = state_.players[kicker];
  const Team team = shooter.team;
  const bool home = team == Team::kHome;
  const int d = state_.DistanceToTargetGoal(shooter.pos, team);
  const double on_target =
      config_.shot_max * std::exp(-std::max(0, d - 1) / config_.shot_range);
  const int keeper = state_.Goalkeeper(Opponent(team));
  const double save =
      keeper >= 0 ? config_.keeper_save * (home ? 0.5 + 0.5 * config_.difficulty : 0.5) : 0.0;
  const double p_goal = on_target * (1.0 - save);
  const Cell target{home ? state_.width - 1 : 0,
                    std::clamp(shooter.pos.y, state_.goal_lo, state_.goal_hi)};
  const double u = rng_.Uniform();
  const bool scored = u < p_goal;

  MatchEvent shot;
  shot.step = state_.t;
  shot.kind = EventKind::kShot;
  shot.team = team;
  shot.player = kicker;
  shot.from = shooter.pos;
  shot.to = target;
  shot.success = scored;
  out.events.push_back(shot);
  state_.ball.kick = {target.x - shooter.pos.x, target.y - shooter.pos.y};

  if (scored) {
    (home ? state_.home_score : state_.away_score) += 1;
    MatchEvent goal = shot;
    goal.kind = EventKind::kGoal;
    out.events.push_back(goal);
    state_.ball.holder = -1;
    state_.ball.pos = target;
    state_.done = true;
    state_.cause = TerminationCause::kGoal;
    out.reward = home ? 1.0 : (config_.concede_penalty ? -1.0 : 0.0);
    return;
  }
  if (u < on_target) {  // saved: the keeper collects
    GiveBall(keeper, out);
    return;
  }
  MatchEvent out_event;
  out_event.step = state_.t;
  out_event.kind = EventKind::kOut;
  out_event.team = team;
  out_event.player = kicker;
  out_event.from = shooter.pos;
  out_event.to = target;
  out.events.push_back(out_event);
  const int restart = keeper >= 0 ? keeper : NearestPlayer(Opponent(team), target, true);
  GiveBall(restart, out);
  if (config_.terminate_on_out) {
    state_.done = true;
    state_.cause = TerminationCause::kOut;
  }
}

void FootballEnv::ResolvePass(int kicker, bool long_pass, StepResult& out) {
  const Player passer = state_.players[kicker];
  const Team team = passer.team;
  const bool home = team == Team::kHome;

  int receiver = -1;
  for (const Player& p : state_.players) {
    if (p.team != team || p.id == kicker || p.role == Role::kGoalkeeper) continue;
    if (receiver < 0) {
      receiver = p.id;
      continue;
    }
    const Player& r = state_.players[receiver];
    if (long_pass) {
      const int progress = home ? p.pos.x : -p.pos.x;
      const int best = home ? r.pos.x : -r.pos.x;
      if (progress > best) receiver = p.id;
    } else if (Chebyshev(p.pos, passer.pos) < Chebyshev(r.pos, passer.pos)) {
      receiver = p.id;
    }
  }
  if (receiver < 0 && !long_pass) {
    for (const Player& p : state_.players) {
      if (p.team == team && p.id != kicker) receiver = p.id;
    }
  }
  if (receiver < 0) return;  // nobody to pass to: acts as idle

  const Cell to = state_.players[receiver].pos;
  const int d = Chebyshev(passer.pos, to);
  MatchEvent pass;
  pass.step = state_.t;
  pass.kind = EventKind::kPass;
  pass.team = team;
  pass.player = kicker;
  pass.target = receiver;
  pass.from = passer.pos;
  pass.to = to;
  state_.ball.kick = {to.x - passer.pos.x, to.y - passer.pos.y};
  const size_t pass_index = out.events.size();
  out.events.push_back(pass);

  // Interception candidates ordered by distance from the passer, then id.
  const std::vector<Cell> line = LineInterior(passer.pos, to);
  std::vector<std::pair<int, int>> candidates;  // (distance along line, id)
  for (const Player& p : state_.players) {
    if (p.team == team) continue;
    int best = -1;
    for (size_t k = 0; k < line.size(); ++k) {
      if (Chebyshev(p.pos, line[k]) <= 1) {
        best = static_cast<int>(k);
        break;
      }
    }
    if (best >= 0) candidates.emplace_back(best, p.id);
  }
  std::sort(candidates.begin(), candidates.end());
  const double intercept =
      home ? config_.intercept_base * (0.5 + config_.difficulty) : config_.intercept_base;
  for (const auto& [dist, id] : candidates) {
    if (rng_.Uniform() < intercept) {
      GiveBall(id, out);
      return;
    }
  }

  const double success = std::clamp(config_.pass_base - config_.pass_decay * d, 0.05, 1.0);
  if (rng_.Uniform() < success) {
    out.events[pass_index].success = true;
    GiveBall(receiver, out);
    if (home) state_.recent_home_passes.push_back(state_.t);
    return;
  }
  // Misplaced: lands next to the receiver, or goes out of play.
  const Cell off{static_cast<int>(rng_.UniformInt(3)) - 1,
                 static_cast<int>(rng_.UniformInt(3)) - 1};
  const Cell land{to.x + off.x, to.y + off.y};
  if (state_.InPitch(land)) {
    state_.ball.holder = -1;
    state_.ball.pos = land;
    out.events[pass_index].to = land;
    return;
  }
  const Cell restart_at = state_.Clamp(land);
  MatchEvent out_event;
  out_event.step = state_.t;
  out_event.kind = EventKind::kOut;
  out_event.team = team;
  out_event.player = kicker;
  out_event.from = passer.pos;
  out_event.to = restart_at;
  out.events.push_back(out_event);
  GiveBall(NearestPlayer(Opponent(team), restart_at, true), out);
  if (config_.terminate_on_out) {
    state_.done = true;
    state_.cause = TerminationCause::kOut;
  }
}

void FootballEnv::ResolveKick(int kicker, int action, StepResult& out) {
  if (action == kShot) {
    ResolveShot(kicker, out);
  } else {
    ResolvePass(kicker, action == kLongPass, out);
  }
}

StepResult FootballEnv::Step(std::span<const int> actions) {
  Require(!state_.done, ErrorCode::kContract, "step called after the episode ended");
  Require(actions.size() == controlled_.size(), ErrorCode::kInput,
          "expected " + std::to_string(controlled_.size()) + " actions, got " +
              std::to_string(actions.size()));
  StepResult out;
  out.actions = ScriptedOpponent(state_, config_.difficulty, rng_);
  for (size_t i = 0; i < controlled_.size(); ++i) {
    Require(actions[i] >= 0 && actions[i] < kNumActions, ErrorCode::kInput,
            "action index out of range for agent " + std::to_string(i));
    out.actions[controlled_[i]] = actions[i];
  }
  const int home_keeper = state_.Goalkeeper(Team::kHome);
  if (home_keeper >= 0) out.actions[home_keeper] = ScriptedAction(state_, home_keeper);

  state_.ball.kick = {0, 0};
  const int start_holder = state_.ball.holder;

  // Kick.
  if (start_holder >= 0) {
    const int a = out.actions[start_holder];
    if (a == kShortPass || a == kLongPass || a == kShot) ResolveKick(start_holder, a, out);
  }

  if (!state_.done) {
    // Moves; the holder carries the ball.
    for (Player& p : state_.players) {
      const Cell d = ActionDelta(out.actions[p.id]);
      p.pos = state_.Clamp({p.pos.x + d.x, p.pos.y + d.y});
      if (state_.ball.holder == p.id) state_.ball.pos = p.pos;
    }
    // Pickup of a ball that was already loose when the step began.
    if (start_holder < 0 && state_.ball.holder < 0) {
      std::vector<int> here;
      for (const Player& p : state_.players) {
        if (p.pos == state_.ball.pos) here.push_back(p.id);
      }
      if (!here.empty()) GiveBall(here[rng_.UniformInt(here.size())], out);
    }
    // Tackles on a holder who kept the ball through the step.
    const int holder = state_.ball.holder;
    if (holder >= 0 && holder == start_holder) {
      const Player& h = state_.players[holder];
      const bool home_holder = h.team == Team::kHome;
      const double tackle = home_holder
                                ? config_.tackle_base * (0.25 + 0.75 * config_.difficulty)
                                : config_.tackle_base * 0.5;
      for (const Player& p : state_.players) {
        if (p.team == h.team || Chebyshev(p.pos, h.pos) > 1) continue;
        if (rng_.Uniform() < tackle) {
          GiveBall(p.id, out);
          break;
        }
      }
    }
  }

  const int holder = state_.ball.holder;
  state_.dribble_streak =
      state_.HomeHasBall() && holder == start_holder ? state_.dribble_streak + 1 : 0;
  state_.t += 1;
  auto& passes = state_.recent_home_passes;
  passes.erase(std::remove_if(passes.begin(), passes.end(),
                              [&](int step) { return step < state_.t - config_.pass_window; }),
               passes.end());
  if (!state_.done && state_.t >= config_.episode_limit) {
    state_.done = true;
    state_.cause = TerminationCause::kStepLimit;
  }
  out.done = state_.done;
  out.cause = state_.cause;
  return out;
}

}  // namespace rewardlab::football
