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

#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "random_states.h"
#include "rewardlab/common/error.h"
#include "rewardlab/football/trace.h"
#include "rewardlab/shaping/engine.h"
#include "rewardlab/shaping/reward.h"
#include "rewardlab/shaping/rules.h"
#include "rewardlab/shaping/skill.h"

namespace rewardlab::shaping {
namespace {

using football::EnvConfig;
using football::MatchState;
using football::Team;

TEST(SkillPoolTest, DefaultPoolHasSevenSkillsAcrossCategories) {
  const SkillPool pool = DefaultSkillPool();
  EXPECT_EQ(pool.size(), 7);
  std::set<SkillCategory> cats;
  for (const Skill& s : pool.skills()) {
    cats.insert(s.category);
    EXPECT_FALSE(s.instruction.empty());
    EXPECT_EQ(s.binding.kind, ScorerBinding::Kind::kRule);
    EXPECT_NO_THROW(rules::FindRule(s.binding.target));
  }
  EXPECT_EQ(cats.size(), 4u);
  EXPECT_EQ(pool.Find("encourage-passing").category, SkillCategory::kMicroGoal);
  EXPECT_EQ(pool.IndexOf("nope"), -1);
  EXPECT_THROW(pool.Find("nope"), Error);
}

TEST(SkillPoolTest, RejectsDuplicatesAndEmpty) {
  EXPECT_THROW(SkillPool(std::vector<Skill>{}), Error);
  const Skill s{"a", "x", "x", SkillCategory::kMacro, {}};
  EXPECT_THROW(SkillPool({s, s}), Error);
}

TEST(SkillPoolTest, JsonRoundTrip) {
  const SkillPool pool = DefaultSkillPool();
  const SkillPool back = PoolFromJson(PoolToJson(pool));
  EXPECT_EQ(back.skills(), pool.skills());
  EXPECT_EQ(back.constants(), pool.constants());
  const auto path = std::filesystem::temp_directory_path() / "rewardlab_pool_test.json";
  SaveSkillPool(pool, path.string());
  EXPECT_EQ(LoadSkillPool(path.string()).skills(), pool.skills());
  std::filesystem::remove(path);
  EXPECT_THROW(LoadSkillPool("/nonexistent/pool.json"), Error);
  EXPECT_EQ(ParseCategory("micro-agent"), SkillCategory::kMicroAgent);
  EXPECT_THROW(ParseCategory("meso"), Error);
}

TEST(RulesTest, EveryRuleStaysInUnitInterval) {
  Rng rng(1);
  const RuleConstants c;
  for (int i = 0; i < 2000; ++i) {
    MatchState s = testing::RandomState(EnvConfig{}, rng);
    s.dribble_streak = static_cast<int>(rng.UniformInt(20));
    for (int k = static_cast<int>(rng.UniformInt(8)); k > 0; --k) s.recent_home_passes.push_back(k);
    for (auto id : rules::RuleIds()) {
      const double v = rules::FindRule(id)(s, c);
      ASSERT_GE(v, 0.0) << id;
      ASSERT_LE(v, 1.0) << id;
    }
  }
}

TEST(RulesTest, BallLocationHandComputed) {
  MatchState s = football::KickoffState(EnvConfig{}, 1);
  const RuleConstants c;
  // Goal mouth rows 6..9 at x = 23. Farthest own-line corner is 23 away.
  s.ball.pos = {23, 7};
  EXPECT_DOUBLE_EQ(rules::BallLocation(s, c), 1.0);
  s.ball.pos = {0, 0};
  EXPECT_DOUBLE_EQ(rules::BallLocation(s, c), 0.0);
  s.ball.pos = {12, 8};
  EXPECT_DOUBLE_EQ(rules::BallLocation(s, c), 1.0 - 11.0 / 23.0);
}

TEST(RulesTest, FormationPerfectAndBroken) {
  MatchState s = football::KickoffState(EnvConfig{}, 1);
  const RuleConstants c;
  // DEF, MID, FWD one each: single-player lines have angle 0, so evenly
  // spaced ordered lines score 1.
  const auto home = s.Outfield(Team::kHome);
  ASSERT_EQ(home.size(), 3u);
  s.players[home[0]].pos = {4, 8};
  s.players[home[1]].pos = {8, 3};
  s.players[home[2]].pos = {12, 12};
  EXPECT_DOUBLE_EQ(rules::CorrectFormation(s, c), 1.0);
  // Reverse order: both gaps non-positive.
  s.players[home[0]].pos = {12, 8};
  s.players[home[2]].pos = {4, 12};
  EXPECT_DOUBLE_EQ(rules::CorrectFormation(s, c), 1.0 - 0.2);
}

TEST(RulesTest, CountersSaturate) {
  MatchState s = football::KickoffState(EnvConfig{}, 1);
  const RuleConstants c;
  s.dribble_streak = 5;
  EXPECT_DOUBLE_EQ(rules::EncourageDribbling(s, c), 0.5);
  s.dribble_streak = 50;
  EXPECT_DOUBLE_EQ(rules::EncourageDribbling(s, c), 1.0);
  s.recent_home_passes = {1, 2};
  EXPECT_DOUBLE_EQ(rules::EncouragePassing(s, c), 0.5);
}

TEST(RulesTest, DefenseIsFullWhenBallIsFarFromOwnGoal) {
  MatchState s = football::KickoffState(EnvConfig{}, 1);
  s.ball.holder = -1;
  s.ball.pos = {20, 5};
  EXPECT_DOUBLE_EQ(rules::EncourageDefense(s, {}), 1.0);
  s.ball.pos = {2, 5};
  for (int id : s.Outfield(Team::kHome)) s.players[id].pos.x = 10;
  EXPECT_DOUBLE_EQ(rules::EncourageDefense(s, {}), 0.0);
}

TEST(RulesTest, UnknownRuleIsLookupError) {
  try {
    rules::FindRule("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLookup);
  }
}

class ConstScorer : public StateScorer {
 public:
  explicit ConstScorer(double v) : v_(v) {}
  double Score(const MatchState&, const Skill&) override {
    ++calls;
    return v_;
  }
  int calls = 0;

 private:
  double v_;
};

TEST(EngineTest, TerminalPotentialIsZero) {
  PotentialEngine engine(DefaultSkillPool());
  MatchState s = football::KickoffState(EnvConfig{}, 1);
  s.ball.pos = {23, 7};
  EXPECT_DOUBLE_EQ(engine.Phi(s, "ball-location"), 1.0);
  s.done = true;
  EXPECT_EQ(engine.Phi(s, "ball-location"), 0.0);
  EXPECT_EQ(TerminalPotential(s), 0.0);
  s.done = false;
  try {
    TerminalPotential(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContract);
  }
}

TEST(EngineTest, BatchMatchesSingle) {
  PotentialEngine engine(DefaultSkillPool());
  const auto trace = football::RunEpisode(EnvConfig{}, 3, [](const football::FootballEnv& env) {
    return std::vector<int>(env.num_agents(), football::kMoveE);
  });
  std::vector<MatchState> states;
  for (int t = 0; t <= trace.size(); ++t) states.push_back(trace.StateAt(t));
  for (auto id : DefaultSkillPool().Ids()) {
    const auto batch = engine.PhiBatch(states, id);
    ASSERT_EQ(batch.size(), states.size());
    for (size_t i = 0; i < states.size(); ++i) EXPECT_EQ(batch[i], engine.Phi(states[i], id));
    EXPECT_EQ(batch.back(), 0.0);
  }
}

TEST(EngineTest, ExternalBindingNeedsScorer) {
  std::vector<Skill> skills = DefaultSkillPool().skills();
  skills.push_back({"vision", "look", "look", SkillCategory::kMacro,
                    {ScorerBinding::Kind::kExternal, "clip"}});
  PotentialEngine engine{SkillPool(skills)};
  const MatchState s = football::KickoffState(EnvConfig{}, 1);
  try {
    engine.Potential(s, "vision");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLookup);
  }
  auto scorer = std::make_shared<ConstScorer>(0.25);
  engine.RegisterScorer(ScorerBinding::Kind::kExternal, "clip", scorer);
  EXPECT_EQ(engine.Potential(s, "vision"), 0.25);
  EXPECT_THROW(engine.RegisterScorer(ScorerBinding::Kind::kRule, "x", scorer), Error);
  EXPECT_THROW(engine.RegisterScorer(ScorerBinding::Kind::kXt, "x", nullptr), Error);
  EXPECT_THROW(engine.Potential(s, "unknown-skill"), Error);
}

TEST(ShapingArithmeticTest, TelescopingSumEqualsMinusInitialPotential) {
  Rng rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformInt(50));
    const double gamma = rng.Uniform(0.5, 1.0);
    std::vector<double> phi(n + 1);
    for (double& p : phi) p = rng.Uniform(-5, 5);
    phi[n] = 0.0;
    double sum = 0.0, factor = 1.0;
    for (int t = 0; t < n; ++t) {
      sum += factor * ShapingReward(phi[t], phi[t + 1], gamma);
      factor *= gamma;
    }
    ASSERT_NEAR(sum, -phi[0], 1e-9);
  }
}

TEST(ShapingArithmeticTest, TotalRewardIsLinear) {
  EXPECT_DOUBLE_EQ(TotalReward(1.0, 0.4, 0.5), 1.2);
  EXPECT_DOUBLE_EQ(TotalReward(1.0, 123.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(ShapingReward(0.3, 0.0, 0.99), -0.3);
}

TEST(ShapingConfigTest, ValidateAndJson) {
  ShapingConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.gamma = 1.0;
  EXPECT_THROW(c.Validate(), Error);
  c = {};
  c.rho = -0.1;
  EXPECT_THROW(c.Validate(), Error);
  nlohmann::json j = ShapingConfig{};
  j["extra"] = 1;
  EXPECT_THROW(j.get<ShapingConfig>(), Error);
}

TEST(NormalizerTest, CalibrationSamplesHaveZeroMean) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    PotentialNormalizer n;
    std::vector<double> xs(1 + rng.UniformInt(500));
    const double loc = rng.Uniform(-100, 100), scale = rng.Uniform(0.001, 50);
    for (double& x : xs) {
      x = loc + scale * rng.Normal();
      n.Observe(x);
    }
    n.Finish();
    double sum = 0.0;
    for (double x : xs) sum += n.Apply(x);
    ASSERT_NEAR(sum / xs.size(), 0.0, 1e-9);
  }
}

TEST(NormalizerTest, MatchesTwoPassStatistics) {
  PotentialNormalizer n;
  const std::vector<double> xs = {1, 2, 3, 4, 10};
  for (double x : xs) n.Observe(x);
  n.Finish();
  EXPECT_NEAR(n.mean(), 4.0, 1e-12);
  EXPECT_NEAR(n.stddev(), std::sqrt(10.0), 1e-12);  // population
  EXPECT_NEAR(n.Apply(4.0 + std::sqrt(10.0)), 1.0, 1e-12);
}

TEST(NormalizerTest, ConstantStreamGivesZero) {
  PotentialNormalizer n;
  for (int i = 0; i < 100; ++i) n.Observe(0.7);
  n.Finish();
  EXPECT_EQ(n.stddev(), 0.0);
  EXPECT_EQ(n.Apply(0.7), 0.0);
  EXPECT_TRUE(std::isfinite(n.Apply(0.8)));
}

TEST(NormalizerTest, PhaseErrors) {
  PotentialNormalizer n;
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kValidation;
  };
  EXPECT_EQ(code([&] { n.Apply(1.0); }), ErrorCode::kPhase);
  EXPECT_EQ(code([&] { n.Finish(); }), ErrorCode::kPhase);
  n.Observe(1.0);
  n.Finish();
  EXPECT_EQ(code([&] { n.Observe(1.0); }), ErrorCode::kPhase);
  const PotentialNormalizer back = PotentialNormalizer::FromJson(n.ToJson());
  EXPECT_EQ(back.phase(), PotentialNormalizer::Phase::kActive);
  EXPECT_EQ(back.mean(), 1.0);
  n.Reset();
  EXPECT_EQ(n.phase(), PotentialNormalizer::Phase::kCalibrating);
  EXPECT_EQ(n.count(), 0);
}

}  // namespace
}  // namespace rewardlab::shaping
