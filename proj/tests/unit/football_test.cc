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

#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "rewardlab/common/error.h"
#include "rewardlab/common/rng.h"
#include "rewardlab/football/config.h"
#include "rewardlab/football/env.h"
#include "rewardlab/football/events.h"
#include "rewardlab/football/trace.h"

namespace rewardlab::football {
namespace {

auto RandomPolicy(uint64_t seed) {
  return [rng = Rng(seed)](const FootballEnv& env) mutable {
    std::vector<int> a(env.num_agents());
    for (int& x : a) x = static_cast<int>(rng.UniformInt(kNumActions));
    return a;
  };
}

TEST(EnvTest, SameSeedSameEpisode) {
  const EnvConfig c;
  const EpisodeTrace a = RunEpisode(c, 11, RandomPolicy(5));
  const EpisodeTrace b = RunEpisode(c, 11, RandomPolicy(5));
  ASSERT_EQ(a.size(), b.size());
  for (int t = 0; t <= a.size(); ++t) {
    EXPECT_EQ(SerializeState(a.StateAt(t)), SerializeState(b.StateAt(t)));
  }
}

TEST(EnvTest, StateInvariantsHoldUnderRandomPlay) {
  EnvConfig c;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const EpisodeTrace tr = RunEpisode(c, seed, RandomPolicy(seed + 100));
    ASSERT_TRUE(tr.complete());
    EXPECT_LE(tr.size(), c.episode_limit);
    int home_goals = 0, away_goals = 0;
    for (int t = 0; t <= tr.size(); ++t) {
      const MatchState& s = tr.StateAt(t);
      EXPECT_EQ(s.t, t);
      for (const Player& p : s.players) ASSERT_TRUE(s.InPitch(p.pos));
      ASSERT_TRUE(s.InPitch(s.ball.pos));
      if (s.ball.holder >= 0) EXPECT_EQ(s.holder().pos, s.ball.pos);
      if (t > 0) {
        for (const MatchEvent& e : tr.steps[t - 1].events) {
          if (e.kind == EventKind::kGoal) (e.team == Team::kHome ? home_goals : away_goals)++;
        }
      }
    }
    const MatchState& last = tr.StateAt(tr.size());
    EXPECT_EQ(last.home_score, home_goals);
    EXPECT_EQ(last.away_score, away_goals);
    if (last.cause == TerminationCause::kStepLimit) EXPECT_EQ(last.t, c.episode_limit);
  }
}

TEST(EnvTest, ObservationsAreBoundedAndSized) {
  EnvConfig c;
  FootballEnv env(c);
  env.Reset(3);
  Rng rng(1);
  while (!env.state().done) {
    for (const auto& o : env.Observations()) {
      ASSERT_EQ(static_cast<int>(o.size()), ObservationSize(c));
      for (double x : o) {
        ASSERT_GE(x, -1.0);
        ASSERT_LE(x, 1.0);
      }
    }
    EXPECT_EQ(static_cast<int>(GlobalState(env.state()).size()), GlobalStateSize(c));
    std::vector<int> a(env.num_agents());
    for (int& x : a) x = static_cast<int>(rng.UniformInt(kNumActions));
    env.Step(a);
  }
}

TEST(EnvTest, StepContracts) {
  FootballEnv env(EnvConfig{});
  env.Reset(1);
  std::vector<int> wrong(env.num_agents() + 1, 0);
  try {
    env.Step(wrong);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInput);
  }
  std::vector<int> bad(env.num_agents(), kNumActions);
  EXPECT_THROW(env.Step(bad), Error);
  std::vector<int> idle(env.num_agents(), kIdle);
  while (!env.state().done) env.Step(idle);
  try {
    env.Step(idle);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContract);
  }
}

TEST(EnvTest, KickoffGivesHomeTheBallAtCentre) {
  EnvConfig c;
  const MatchState s = KickoffState(c, 9);
  ASSERT_TRUE(s.HomeHasBall());
  EXPECT_EQ(s.ball.pos, (Cell{c.width / 2 - 1, c.height / 2}));
  EXPECT_EQ(s.CountTeam(Team::kHome), c.home_players + 1);
  EXPECT_EQ(s.CountTeam(Team::kAway), c.away_players + 1);
  for (size_t i = 0; i < s.players.size(); ++i) EXPECT_EQ(s.players[i].id, static_cast<int>(i));
}

TEST(EnvTest, StepLimitEndsEpisode) {
  EnvConfig c;
  c.episode_limit = 5;
  FootballEnv env(c);
  env.Reset(2);
  std::vector<int> idle(env.num_agents(), kIdle);
  StepResult r;
  int steps = 0;
  while (!env.state().done) {
    r = env.Step(idle);
    ++steps;
  }
  EXPECT_LE(steps, 5);
  if (r.cause == TerminationCause::kStepLimit) EXPECT_EQ(steps, 5);
}

TEST(EnvTest, HomeGoalPaysReward) {
  // A forward walking straight at goal and shooting should score eventually.
  EnvConfig c;
  c.difficulty = 0.0;
  c.away_players = 1;
  c.goalkeepers = false;
  double total = 0.0;
  int goals = 0;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const EpisodeTrace tr = RunEpisode(c, seed, [](const FootballEnv& env) {
      std::vector<int> a(env.num_agents());
      for (int i = 0; i < env.num_agents(); ++i) {
        a[i] = ScriptedAction(env.state(), env.ControlledIds()[i]);
      }
      return a;
    });
    for (const auto& st : tr.steps) total += st.reward;
    goals += tr.StateAt(tr.size()).home_score;
  }
  EXPECT_GT(goals, 0);
  EXPECT_DOUBLE_EQ(total, goals);
}

TEST(EnvTest, ActionDeltaAndMoveTowardAgree) {
  for (int a = kMoveN; a <= kMoveNW; ++a) {
    const Cell d = ActionDelta(a);
    EXPECT_EQ(MoveToward({5, 5}, {5 + d.x * 3, 5 + d.y * 3}), a);
  }
  EXPECT_EQ(ActionDelta(kShot), (Cell{0, 0}));
}

TEST(ConfigTest, ValidationAndJson) {
  EnvConfig c;
  c.width = 0;
  EXPECT_THROW(c.Validate(), Error);
  const EnvConfig d;
  nlohmann::json j = d;
  EXPECT_EQ(j.get<EnvConfig>().difficulty, d.difficulty);
  j["bogus"] = 1;
  try {
    j.get<EnvConfig>();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST(TraceTest, RoundTrip) {
  const EpisodeTrace tr = RunEpisode(EnvConfig{}, 4, RandomPolicy(8));
  std::stringstream ss;
  WriteTrace(tr, ss);
  const EpisodeTrace back = ReadTrace(ss);
  ASSERT_EQ(back.size(), tr.size());
  for (int t = 0; t <= tr.size(); ++t) {
    EXPECT_EQ(SerializeState(back.StateAt(t)), SerializeState(tr.StateAt(t)));
  }
  EXPECT_EQ(EventLog(back).size(), EventLog(tr).size());
}

TEST(TraceTest, MalformedLineNamesLineNumber) {
  std::stringstream ss("{\"type\":\"header\"}\nnot json\n");
  try {
    ReadTrace(ss);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInput);
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(EventsTest, CountEventsSplitsByTeam) {
  std::vector<MatchEvent> ev = {
      {0, EventKind::kPass, Team::kHome, 1, 2, {}, {}, true},
      {1, EventKind::kPass, Team::kHome, 1, 2, {}, {}, false},
      {2, EventKind::kShot, Team::kAway, 5, -1, {}, {}, false},
      {3, EventKind::kGoal, Team::kHome, 1, -1, {}, {}, true},
  };
  const EventCounts h = CountEvents(ev, Team::kHome);
  EXPECT_EQ(h.pass_attempts, 2);
  EXPECT_EQ(h.pass_successes, 1);
  EXPECT_EQ(h.goals, 1);
  EXPECT_EQ(CountEvents(ev, Team::kAway).shots, 1);
}

}  // namespace
}  // namespace rewardlab::football
