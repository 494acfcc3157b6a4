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

#ifndef REWARDLAB_SHAPING_SKILL_H_
#define REWARDLAB_SHAPING_SKILL_H_

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace rewardlab::shaping {

enum class SkillCategory { kMacro = 0, kMicroState, kMicroAgent, kMicroGoal };
inline constexpr int kNumCategories = 4;

std::string_view CategoryName(SkillCategory c);
// Throws kValidation for anything outside the fixed set.
SkillCategory ParseCategory(std::string_view name);

// What computes a skill's potential.
//   rule      built-in scorer named by `target` (see rules.h)
//   xt        expected-threat grid registered under `target`
//   external  scorer registered under `target`, typically a bridge client
struct ScorerBinding {
  enum class Kind { kRule, kXt, kExternal };
  Kind kind = Kind::kRule;
  std::string target;
  friend bool operator==(const ScorerBinding&, const ScorerBinding&) = default;
};

struct Skill {
  std::string id;
  std::string instruction;  // text handed to an external scorer
  std::string description;  // one line shown to a selector
  SkillCategory category = SkillCategory::kMacro;
  ScorerBinding binding;
  friend bool operator==(const Skill&, const Skill&) = default;
};

// Tunable constants of the built-in rules. Weights that are paired sum to 1
// so every rule stays inside [0, 1].
struct RuleConstants {
  double possession_weight = 0.5;
  double territory_weight = 0.5;
  double formation_angle_weight = 0.4;
  double formation_spacing_weight = 0.4;
  double formation_order_weight = 0.2;
  int dribble_cap = 10;
  double attack_third_weight = 0.5;
  double attack_ball_weight = 0.5;
  int pass_cap = 4;

  void Validate() const;  // throws kConfig
  friend bool operator==(const RuleConstants&, const RuleConstants&) = default;
};

// Ordered, immutable collection of skills with unique ids.
class SkillPool {
 public:
  SkillPool() = default;
  explicit SkillPool(std::vector<Skill> skills, RuleConstants constants = {});

  int size() const { return static_cast<int>(skills_.size()); }
  const std::vector<Skill>& skills() const { return skills_; }
  const Skill& at(int index) const { return skills_.at(index); }
  const RuleConstants& constants() const { return constants_; }
  bool Contains(std::string_view id) const { return IndexOf(id) >= 0; }
  // -1 when absent.
  int IndexOf(std::string_view id) const;
  // Throws kLookup when absent.
  const Skill& Find(std::string_view id) const;
  std::vector<std::string> Ids() const;

 private:
  std::vector<Skill> skills_;
  RuleConstants constants_;
};

// The seven default skills, each bound to the built-in rule of the same id.
SkillPool DefaultSkillPool();

void to_json(nlohmann::json& j, const ScorerBinding& b);
void from_json(const nlohmann::json& j, ScorerBinding& b);
void to_json(nlohmann::json& j, const Skill& s);
void from_json(const nlohmann::json& j, Skill& s);
void to_json(nlohmann::json& j, const RuleConstants& c);
void from_json(const nlohmann::json& j, RuleConstants& c);
nlohmann::json PoolToJson(const SkillPool& pool);
SkillPool PoolFromJson(const nlohmann::json& j);
// Throws kIo if unreadable, kValidation if malformed.
SkillPool LoadSkillPool(const std::string& path);
void SaveSkillPool(const SkillPool& pool, const std::string& path);

}  // namespace rewardlab::shaping

#endif  // REWARDLAB_SHAPING_SKILL_H_
