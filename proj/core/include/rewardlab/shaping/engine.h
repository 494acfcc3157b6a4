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

#ifndef REWARDLAB_SHAPING_ENGINE_H_
#define REWARDLAB_SHAPING_ENGINE_H_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rewardlab/football/match_state.h"
#include "rewardlab/shaping/skill.h"

namespace rewardlab::shaping {

// A potential source outside the built-in rules: an xT grid, or a client
// forwarding rendered states to an external scorer.
class StateScorer {
 public:
  virtual ~StateScorer() = default;
  // xT scorers return [0, 1]; external cosine scorers [-1, 1].
  virtual double Score(const football::MatchState& state, const Skill& skill) = 0;
  virtual std::vector<double> ScoreBatch(std::span<const football::MatchState> states,
                                         const Skill& skill);
};

// Must be called on a terminal state; returns exactly 0.
double TerminalPotential(const football::MatchState& state);

// Evaluates skill potentials. The pool is fixed at construction; scorers for
// xt and external bindings are registered by target name before use.
class PotentialEngine {
 public:
  explicit PotentialEngine(SkillPool pool);

  const SkillPool& pool() const { return pool_; }
  void RegisterScorer(ScorerBinding::Kind kind, const std::string& target,
                      std::shared_ptr<StateScorer> scorer);

  // Raw potential of a non-terminal state. Throws kLookup for an unknown
  // skill, rule or scorer.
  double Potential(const football::MatchState& state, const std::string& skill_id);
  // Potential with terminal states mapped to 0.
  double Phi(const football::MatchState& state, const std::string& skill_id);
  // Phi over a sequence; non-terminal states go to the scorer in one batch.
  std::vector<double> PhiBatch(std::span<const football::MatchState> states,
                               const std::string& skill_id);

 private:
  StateScorer& ScorerFor(const Skill& skill);

  SkillPool pool_;
  std::map<std::pair<ScorerBinding::Kind, std::string>, std::shared_ptr<StateScorer>> scorers_;
};

}  // namespace rewardlab::shaping

#endif  // REWARDLAB_SHAPING_ENGINE_H_
