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

#include "rewardlab/shaping/skill.h"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "rewardlab/common/error.h"

namespace rewardlab::shaping {

namespace {

constexpr std::string_view kCategoryNames[] = {"macro", "micro-state", "micro-agent",
                                               "micro-goal"};

std::string_view KindName(ScorerBinding::Kind k) {
  switch (k) {
    case ScorerBinding::Kind::kRule: return "rule";
    case ScorerBinding::Kind::kXt: return "xt";
    case ScorerBinding::Kind::kExternal: return "external";
  }
  return "rule";
}

Skill MakeSkill(std::string id, std::string text, SkillCategory category) {
  Skill s;
  s.binding = {ScorerBinding::Kind::kRule, id};
  s.id = std::move(id);
  s.description = text;
  s.instruction = std::move(text);
  s.category = category;
  return s;
}

}  // namespace

std::string_view CategoryName(SkillCategory c) { return kCategoryNames[static_cast<int>(c)]; }

SkillCategory ParseCategory(std::string_view name) {
  for (int i = 0; i < kNumCategories; ++i) {
    if (kCategoryNames[i] == name) return static_cast<SkillCategory>(i);
  }
  Fail(ErrorCode::kValidation, "unknown skill category '" + std::string(name) + "'");
}

void RuleConstants::Validate() const {
  auto unit = [](double w) { return w >= 0.0 && w <= 1.0; };
  Require(unit(possession_weight) && unit(territory_weight) &&
              possession_weight + territory_weight <= 1.0 + 1e-12,
          ErrorCode::kConfig, "advantage weights must be in [0,1] and sum to at most 1");
  Require(unit(formation_angle_weight) && unit(formation_spacing_weight) &&
              unit(formation_order_weight) &&
              formation_angle_weight + formation_spacing_weight + formation_order_weight <=
                  1.0 + 1e-12,
          ErrorCode::kConfig, "formation weights must be in [0,1] and sum to at most 1");
  Require(unit(attack_third_weight) && unit(attack_ball_weight) &&
              attack_third_weight + attack_ball_weight <= 1.0 + 1e-12,
          ErrorCode::kConfig, "attack weights must be in [0,1] and sum to at most 1");
  Require(dribble_cap >= 1 && pass_cap >= 1, ErrorCode::kConfig, "caps must be >= 1");
}

SkillPool::SkillPool(std::vector<Skill> skills, RuleConstants constants)
    : skills_(std::move(skills)), constants_(constants) {
  Require(!skills_.empty(), ErrorCode::kValidation, "skill pool is empty");
  std::set<std::string> ids;
  for (const Skill& s : skills_) {
    Require(!s.id.empty(), ErrorCode::kValidation, "skill id is empty");
    Require(ids.insert(s.id).second, ErrorCode::kValidation, "duplicate skill id " + s.id);
  }
  constants_.Validate();
}

int SkillPool::IndexOf(std::string_view id) const {
  for (size_t i = 0; i < skills_.size(); ++i) {
    if (skills_[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

const Skill& SkillPool::Find(std::string_view id) const {
  const int i = IndexOf(id);
  Require(i >= 0, ErrorCode::kLookup, "unknown skill '" + std::string(id) + "'");
  return skills_[i];
}

std::vector<std::string> SkillPool::Ids() const {
  std::vector<std::string> ids;
  for (const Skill& s : skills_) ids.push_back(s.id);
  return ids;
}

SkillPool DefaultSkillPool() {
  using C = SkillCategory;
  return SkillPool({
      MakeSkill("has-advantage", "The blue team has a bigger advantage than the red team.",
                C::kMacro),
      MakeSkill("ball-location", "The ball is close to the opponent's goal.", C::kMicroState),
      MakeSkill("correct-formation",
                "Three blue formation lines are parallel and have proper spacing.",
                C::kMicroAgent),
      MakeSkill("encourage-dribbling", "The black ball is well dribbled by the blue team.",
                C::kMicroAgent),
      MakeSkill("encourage-attack", "The blue team is performing a coordinated attack.",
                C::kMicroAgent),
      MakeSkill("encourage-defense",
                "The blue team is trying to defend when the ball is close to their goal.",
                C::kMicroAgent),
      MakeSkill("encourage-passing", "The blue team is passing.", C::kMicroGoal),
  });
}

void to_json(nlohmann::json& j, const ScorerBinding& b) {
  j = {{"kind", KindName(b.kind)}, {"target", b.target}};
}

void from_json(const nlohmann::json& j, ScorerBinding& b) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rule") {
    b.kind = ScorerBinding::Kind::kRule;
  } else if (kind == "xt") {
    b.kind = ScorerBinding::Kind::kXt;
  } else if (kind == "external") {
    b.kind = ScorerBinding::Kind::kExternal;
  } else {
    Fail(ErrorCode::kValidation, "unknown scorer binding kind '" + kind + "'");
  }
  b.target = j.at("target").get<std::string>();
}

void to_json(nlohmann::json& j, const Skill& s) {
  j = {{"id", s.id},
       {"category", CategoryName(s.category)},
       {"instruction", s.instruction},
       {"description", s.description},
       {"binding", s.binding}};
}

void from_json(const nlohmann::json& j, Skill& s) {
  s.id = j.at("id").get<std::string>();
  s.category = ParseCategory(j.at("category").get<std::string>());
  s.instruction = j.at("instruction").get<std::string>();
  s.description = j.value("description", s.instruction);
  if (j.contains("binding")) {
    s.binding = j.at("binding").get<ScorerBinding>();
  } else {
    s.binding = {ScorerBinding::Kind::kRule, s.id};
  }
}

void to_json(nlohmann::json& j, const RuleConstants& c) {
  j = {{"possession_weight", c.possession_weight},
       {"territory_weight", c.territory_weight},
       {"formation_angle_weight", c.formation_angle_weight},
       {"formation_spacing_weight", c.formation_spacing_weight},
       {"formation_order_weight", c.formation_order_weight},
       {"dribble_cap", c.dribble_cap},
       {"attack_third_weight", c.attack_third_weight},
       {"attack_ball_weight", c.attack_ball_weight},
       {"pass_cap", c.pass_cap}};
}

void from_json(const nlohmann::json& j, RuleConstants& c) {
  const nlohmann::json defaults = RuleConstants{};
  for (const auto& [key, value] : j.items()) {
    Require(defaults.contains(key), ErrorCode::kValidation, "unknown rule constant '" + key + "'");
  }
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("possession_weight", c.possession_weight);
  get("territory_weight", c.territory_weight);
  get("formation_angle_weight", c.formation_angle_weight);
  get("formation_spacing_weight", c.formation_spacing_weight);
  get("formation_order_weight", c.formation_order_weight);
  get("dribble_cap", c.dribble_cap);
  get("attack_third_weight", c.attack_third_weight);
  get("attack_ball_weight", c.attack_ball_weight);
  get("pass_cap", c.pass_cap);
}

nlohmann::json PoolToJson(const SkillPool& pool) {
  return {{"skills", pool.skills()}, {"constants", pool.constants()}};
}

SkillPool PoolFromJson(const nlohmann::json& j) {
  try {
    RuleConstants constants;
    if (j.contains("constants")) constants = j.at("constants").get<RuleConstants>();
    return SkillPool(j.at("skills").get<std::vector<Skill>>(), constants);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kValidation, std::string("malformed skill pool: ") + e.what());
  }
}

SkillPool LoadSkillPool(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kIo, "cannot read skill pool " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kValidation, path + ": " + e.what());
  }
  return PoolFromJson(j);
}

void SaveSkillPool(const SkillPool& pool, const std::string& path) {
  std::ofstream out(path);
  Require(out.good(), ErrorCode::kIo, "cannot write skill pool " + path);
  out << PoolToJson(pool).dump(2) << '\n';
}

}  // namespace rewardlab::shaping
