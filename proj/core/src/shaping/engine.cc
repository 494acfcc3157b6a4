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

#include "rewardlab/shaping/engine.h"

#include "rewardlab/common/error.h"
#include "rewardlab/shaping/rules.h"

namespace rewardlab::shaping {

using football::MatchState;

std::vector<double> StateScorer::ScoreBatch(std::span<const MatchState> states,
                                            const Skill& skill) {
  std::vector<double> out;
  out.reserve(states.size());
  for (const MatchState& s : states) out.push_back(Score(s, skill));
  return out;
}

double TerminalPotential(const MatchState& state) {
  Require(state.done, ErrorCode::kContract, "terminal potential requested for a live state");
  return 0.0;
}

PotentialEngine::PotentialEngine(SkillPool pool) : pool_(std::move(pool)) {}

void PotentialEngine::RegisterScorer(ScorerBinding::Kind kind, const std::string& target,
                                     std::shared_ptr<StateScorer> scorer) {
  Require(kind != ScorerBinding::Kind::kRule, ErrorCode::kConfig,
          "rule bindings are built in and cannot be registered");
  Require(scorer != nullptr, ErrorCode::kConfig, "null scorer for " + target);
  scorers_[{kind, target}] = std::move(scorer);
}

StateScorer& PotentialEngine::ScorerFor(const Skill& skill) {
  auto it = scorers_.find({skill.binding.kind, skill.binding.target});
  Require(it != scorers_.end(), ErrorCode::kLookup,
          "no scorer registered for '" + skill.binding.target + "' (skill " + skill.id + ")");
  return *it->second;
}

double PotentialEngine::Potential(const MatchState& state, const std::string& skill_id) {
  const Skill& skill = pool_.Find(skill_id);
  if (skill.binding.kind == ScorerBinding::Kind::kRule) {
    return rules::FindRule(skill.binding.target)(state, pool_.constants());
  }
  return ScorerFor(skill).Score(state, skill);
}

double PotentialEngine::Phi(const MatchState& state, const std::string& skill_id) {
  if (state.done) return TerminalPotential(state);
  return Potential(state, skill_id);
}

std::vector<double> PotentialEngine::PhiBatch(std::span<const MatchState> states,
                                              const std::string& skill_id) {
  const Skill& skill = pool_.Find(skill_id);
  std::vector<double> out(states.size(), 0.0);
  if (skill.binding.kind == ScorerBinding::Kind::kRule) {
    const rules::RuleFn fn = rules::FindRule(skill.binding.target);
    for (size_t i = 0; i < states.size(); ++i) {
      if (!states[i].done) out[i] = fn(states[i], pool_.constants());
    }
    return out;
  }
  std::vector<MatchState> live;
  std::vector<size_t> where;
  for (size_t i = 0; i < states.size(); ++i) {
    if (states[i].done) continue;
    live.push_back(states[i]);
    where.push_back(i);
  }
  if (live.empty()) return out;
  const std::vector<double> scores = ScorerFor(skill).ScoreBatch(live, skill);
  Require(scores.size() == live.size(), ErrorCode::kDimension,
          "scorer returned " + std::to_string(scores.size()) + " values for " +
              std::to_string(live.size()) + " states");
  for (size_t k = 0; k < where.size(); ++k) out[where[k]] = scores[k];
  return out;
}

}  // namespace rewardlab::shaping
