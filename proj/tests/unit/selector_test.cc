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

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "plateau_record.h"
#include "rewardlab/common/error.h"
#include "rewardlab/common/rng.h"
#include "rewardlab/selector/selector.h"

namespace rewardlab::selector {
namespace {

using shaping::DefaultSkillPool;

TrainingRecords Flat(int epochs, double win, double reward) {
  TrainingRecords r;
  for (int i = 0; i < epochs; ++i) r.Append({{"win_rate", win}, {"total_shot", 1.0}}, reward);
  return r;
}

TEST(HeuristicTest, PlateauedAttackMovesOn) {
  const SelectionRequest r = testing::PlateauRequest();
  EXPECT_TRUE(IsPlateau(r.last_skill_reward, 10, 0.005));
  const SelectionResponse out = HeuristicSelect(r);
  EXPECT_NE(out.skill, "encourage-attack");
  EXPECT_TRUE(DefaultSkillPool().Contains(out.skill));
  // Next category after micro-agent wraps to micro-goal.
  EXPECT_EQ(out.skill, "encourage-passing");
}

TEST(HeuristicTest, NoWinsPicksScoringSkill) {
  const auto req = BuildRequest(Flat(5, 0.0, 0.1), DefaultSkillPool(), "encourage-attack", {}, 5);
  EXPECT_EQ(HeuristicSelect(req).skill, "ball-location");
  const auto req2 = BuildRequest(Flat(5, 0.0, 0.1), DefaultSkillPool(), "ball-location", {}, 5);
  EXPECT_NE(HeuristicSelect(req2).skill, "ball-location");
}

TEST(HeuristicTest, RisingRewardStaysInCategory) {
  TrainingRecords rec;
  for (int i = 0; i < 10; ++i) rec.Append({{"win_rate", 0.5}}, 0.1 * i);
  const auto req = BuildRequest(rec, DefaultSkillPool(), "encourage-attack", {}, 10);
  const auto out = HeuristicSelect(req);
  EXPECT_EQ(DefaultSkillPool().Find(out.skill).category, shaping::SkillCategory::kMicroAgent);
  EXPECT_NE(out.skill, "encourage-attack");
}

TEST(HeuristicTest, PrefersUnusedSkills) {
  TrainingRecords rec;
  for (int i = 0; i < 10; ++i) rec.Append({{"win_rate", 0.5}}, 0.1 * i);
  const auto req = BuildRequest(rec, DefaultSkillPool(), "encourage-attack",
                                {"correct-formation", "encourage-dribbling"}, 10);
  EXPECT_EQ(HeuristicSelect(req).skill, "encourage-defense");
}

TEST(HeuristicTest, NeverRepeatsLastSkill) {
  Rng rng(1);
  const auto ids = DefaultSkillPool().Ids();
  for (int i = 0; i < 500; ++i) {
    TrainingRecords rec;
    const int n = 1 + static_cast<int>(rng.UniformInt(20));
    for (int k = 0; k < n; ++k) {
      rec.Append({{"win_rate", rng.Uniform() < 0.3 ? 0.0 : rng.Uniform()}}, rng.Uniform());
    }
    std::vector<std::string> used;
    for (const auto& id : ids) {
      if (rng.Uniform() < 0.3) used.push_back(id);
    }
    const std::string last = ids[rng.UniformInt(ids.size())];
    const auto out = HeuristicSelect(BuildRequest(rec, DefaultSkillPool(), last, used, n));
    ASSERT_NE(out.skill, last);
  }
}

TEST(HeuristicTest, PlateauDetection) {
  EXPECT_TRUE(IsPlateau({0.5}, 10, 0.005));
  EXPECT_TRUE(IsPlateau({1, 1, 1, 1}, 10, 0.005));
  EXPECT_FALSE(IsPlateau({0, 0.1, 0.2, 0.3}, 10, 0.005));
  // Only the last window entries matter.
  EXPECT_TRUE(IsPlateau({0, 5, 10, 1, 1, 1}, 3, 0.005));
}

TEST(HeuristicTest, SingleSkillPoolFails) {
  SelectionRequest r = testing::PlateauRequest();
  r.pool.resize(1);
  r.last_skill = r.pool[0].id;
  try {
    HeuristicSelect(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSelection);
  }
}

TEST(RequestTest, RoundsAndValidates) {
  TrainingRecords rec;
  rec.Append({{"win_rate", 0.123456}}, -0.0049);
  const auto req = BuildRequest(rec, DefaultSkillPool(), "has-advantage", {}, 1);
  EXPECT_EQ(req.records.at("win_rate"), std::vector<double>{0.12});
  EXPECT_EQ(req.last_skill_reward[0], 0.0);
  EXPECT_EQ(req.pool.size(), 7u);
  try {
    BuildRequest(TrainingRecords{}, DefaultSkillPool(), "has-advantage", {}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
  try {
    BuildRequest(rec, DefaultSkillPool(), "nope", {}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLookup);
  }
  EXPECT_EQ(RoundTo2(0.125), 0.13);
  EXPECT_EQ(RoundTo2(-1.234), -1.23);
}

TEST(RequestTest, JsonRoundTripAndPrompt) {
  const SelectionRequest r = testing::PlateauRequest();
  const nlohmann::json j = r;
  EXPECT_EQ(j.get<SelectionRequest>(), r);
  const std::string prompt = PromptText(r);
  for (const auto& e : r.pool) EXPECT_NE(prompt.find(e.id), std::string::npos);
  EXPECT_NE(prompt.find("Next Skill"), std::string::npos);
  const SelectionResponse resp{"ball-location", "because"};
  EXPECT_EQ(nlohmann::json(resp).get<SelectionResponse>(), resp);
}

TEST(RecordsTest, SeriesMustStayAligned) {
  TrainingRecords rec;
  rec.Append({{"a", 1.0}}, 0.0);
  EXPECT_THROW(rec.Append({{"b", 1.0}}, 0.0), Error);
}

class ScriptedBackend : public SelectionBackend {
 public:
  explicit ScriptedBackend(std::string answer, bool fail = false)
      : answer_(std::move(answer)), fail_(fail) {}
  SelectionResponse Select(const SelectionRequest&) override {
    ++calls;
    if (fail_) Fail(ErrorCode::kTimeout, "slow");
    return {answer_, "ok"};
  }
  int calls = 0;

 private:
  std::string answer_;
  bool fail_;
};

TEST(ExternalTest, AcceptsKnownIdsAndFallsBack) {
  const SelectionRequest r = testing::PlateauRequest();
  ScriptedBackend good("correct-formation");
  auto o = ExternalSelect(r, good);
  EXPECT_EQ(o.source, "external");
  EXPECT_EQ(o.response.skill, "correct-formation");
  ScriptedBackend unknown("juggling");
  o = ExternalSelect(r, unknown);
  EXPECT_EQ(o.source, "fallback");
  EXPECT_FALSE(o.warning.empty());
  EXPECT_EQ(o.response, HeuristicSelect(r));
  ScriptedBackend broken("x", true);
  o = ExternalSelect(r, broken);
  EXPECT_EQ(o.source, "fallback");
  EXPECT_NE(o.warning.find("timeout"), std::string::npos);
}

TEST(SkillSelectorTest, SelectsExactlyEveryCycle) {
  SelectorConfig c;
  c.cycle = 50;
  SkillSelector sel(DefaultSkillPool(), c);
  EXPECT_EQ(sel.active_skill(), "encourage-attack");
  std::vector<int> selected_at;
  for (int epoch = 1; epoch <= 260; ++epoch) {
    sel.RecordEpoch({{"win_rate", 0.1}, {"total_shot", 1.0}}, 0.2);
    if (sel.MaybeSelect(epoch)) {
      selected_at.push_back(epoch);
      EXPECT_EQ(sel.records().epochs, 0);
    }
  }
  EXPECT_EQ(selected_at, (std::vector<int>{50, 100, 150, 200, 250}));
  EXPECT_EQ(sel.history().size(), 6u);
  for (size_t i = 1; i < sel.history().size(); ++i) {
    EXPECT_NE(sel.history()[i], sel.history()[i - 1]);
  }
  for (int e = 0; e < 200; ++e) EXPECT_EQ(IsSelectionEpoch(e, 50), e > 0 && e % 50 == 0);
}

TEST(SkillSelectorTest, ExternalModeUsesBackendAndLogs) {
  SelectorConfig c;
  c.cycle = 2;
  c.mode = "external";
  auto backend = std::make_shared<ScriptedBackend>("has-advantage");
  SkillSelector sel(DefaultSkillPool(), c, backend);
  const auto path = std::filesystem::temp_directory_path() / "rewardlab_dialogue_test.jsonl";
  std::filesystem::remove(path);
  DialogueLog log(path.string());
  sel.set_log(&log);
  sel.RecordEpoch({{"win_rate", 0.1}}, 0.2);
  EXPECT_FALSE(sel.MaybeSelect(1));
  sel.RecordEpoch({{"win_rate", 0.1}}, 0.2);
  const auto o = sel.MaybeSelect(2, "frames/manifest.txt");
  ASSERT_TRUE(o);
  EXPECT_EQ(o->source, "external");
  EXPECT_EQ(sel.active_skill(), "has-advantage");
  std::ifstream in(path);
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  const auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j.at("request").at("replay_manifest"), "frames/manifest.txt");
  EXPECT_EQ(j.at("response").at("skill"), "has-advantage");
  std::filesystem::remove(path);
}

TEST(SkillSelectorTest, StateRoundTrip) {
  SelectorConfig c;
  c.cycle = 3;
  SkillSelector a(DefaultSkillPool(), c);
  for (int e = 1; e <= 4; ++e) {
    a.RecordEpoch({{"win_rate", 0.2}}, 0.1 * e);
    a.MaybeSelect(e);
  }
  SkillSelector b(DefaultSkillPool(), c);
  b.RestoreJson(a.ToJson());
  EXPECT_EQ(b.active_skill(), a.active_skill());
  EXPECT_EQ(b.history(), a.history());
  EXPECT_EQ(b.records().epochs, a.records().epochs);
}

TEST(SelectorConfigTest, Validation) {
  SelectorConfig c;
  c.cycle = 0;
  EXPECT_THROW(c.Validate(DefaultSkillPool()), Error);
  c = {};
  c.initial_skill = "nope";
  EXPECT_THROW(c.Validate(DefaultSkillPool()), Error);
  c = {};
  c.mode = "oracle";
  EXPECT_THROW(c.Validate(DefaultSkillPool()), Error);
  nlohmann::json j = SelectorConfig{};
  EXPECT_EQ(j.get<SelectorConfig>().cycle, 50);
}

}  // namespace
}  // namespace rewardlab::selector
