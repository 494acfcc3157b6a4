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

#ifndef REWARDLAB_SELECTOR_SELECTOR_H_
#define REWARDLAB_SELECTOR_SELECTOR_H_

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rewardlab/shaping/skill.h"

namespace rewardlab::selector {

// Per-epoch series collected over the current selection cycle.
struct TrainingRecords {
  std::map<std::string, std::vector<double>> series;  // e.g. "win_rate", "total_shot"
  std::vector<double> skill_reward;  // mean normalized potential of the active skill
  int epochs = 0;

  // Appends one epoch. Every call must supply the same series names.
  void Append(const std::map<std::string, double>& metrics, double skill_reward_value);
  void Clear() { *this = TrainingRecords{}; }
};

struct PoolEntry {
  std::string id;
  std::string description;
  shaping::SkillCategory category = shaping::SkillCategory::kMacro;
  friend bool operator==(const PoolEntry&, const PoolEntry&) = default;
};

struct SelectionRequest {
  int epoch = 0;
  std::string replay_manifest;  // empty when no replay was exported
  std::string initial_instruction;
  std::vector<PoolEntry> pool;
  std::string last_skill;
  std::vector<double> last_skill_reward;  // rounded to 2 decimals
  std::map<std::string, std::vector<double>> records;  // rounded to 2 decimals
  std::vector<std::string> used_skills;  // earlier selections, oldest first
  friend bool operator==(const SelectionRequest&, const SelectionRequest&) = default;
};

struct SelectionResponse {
  std::string skill;
  std::string analysis;
  friend bool operator==(const SelectionResponse&, const SelectionResponse&) = default;
};

void to_json(nlohmann::json& j, const PoolEntry& e);
void from_json(const nlohmann::json& j, PoolEntry& e);
void to_json(nlohmann::json& j, const SelectionRequest& r);
void from_json(const nlohmann::json& j, SelectionRequest& r);
void to_json(nlohmann::json& j, const SelectionResponse& r);
void from_json(const nlohmann::json& j, SelectionResponse& r);

inline constexpr char kDefaultInstruction[] =
    "Guide the blue team toward human-like football play.";

double RoundTo2(double x);

// Throws kPrecondition without a completed epoch and kLookup if last_skill
// is not in the pool.
SelectionRequest BuildRequest(const TrainingRecords& records, const shaping::SkillPool& pool,
                              const std::string& last_skill,
                              const std::vector<std::string>& used_skills, int epoch,
                              const std::string& replay_manifest = "",
                              const std::string& initial_instruction = kDefaultInstruction);

// Plain-text rendering of a request for a language-model selector.
std::string PromptText(const SelectionRequest& request);

struct HeuristicOptions {
  int plateau_window = 10;
  double plateau_slope = 0.005;
  std::string scoring_skill = "ball-location";
};

// |least-squares slope| of the last `window` entries is below `threshold`.
// Fewer than two entries count as a plateau.
bool IsPlateau(const std::vector<double>& record, int window, double threshold);

// Deterministic choice, never the last skill. In order of precedence:
//   1. win_rate present and all zero: the scoring skill (if it is not the
//      last one).
//   2. last-skill record plateaued: first unused skill of the next category
//      in the cycle macro -> micro-state -> micro-agent -> micro-goal.
//   3. otherwise the next unused skill of the last skill's category, or
//      rule 2 if that category has nothing else.
// Used skills are only picked once nothing unused remains in a category.
// Throws kSelection for a pool with fewer than two skills.
SelectionResponse HeuristicSelect(const SelectionRequest& request,
                                  const HeuristicOptions& options = {});

// Anything that can answer a selection request (e.g. a bridge client).
class SelectionBackend {
 public:
  virtual ~SelectionBackend() = default;
  virtual SelectionResponse Select(const SelectionRequest& request) = 0;
};

struct SelectionOutcome {
  SelectionResponse response;
  std::string source;   // "heuristic", "external" or "fallback"
  std::string warning;  // set for fallbacks
};

// Asks the backend; unknown ids and backend failures fall back to the
// heuristic with a warning. A repeated last skill is accepted.
SelectionOutcome ExternalSelect(const SelectionRequest& request, SelectionBackend& backend,
                                const HeuristicOptions& options = {});

// JSON-lines log of every request, prompt and outcome.
class DialogueLog {
 public:
  DialogueLog() = default;
  explicit DialogueLog(const std::string& path);  // throws kIo
  bool enabled() const { return out_ != nullptr; }
  void Write(const SelectionRequest& request, const SelectionOutcome& outcome);

 private:
  std::unique_ptr<std::ofstream> out_;
};

struct SelectorConfig {
  int cycle = 50;
  std::string initial_skill = "encourage-attack";
  std::string mode = "heuristic";  // or "external"
  std::string initial_instruction = kDefaultInstruction;
  HeuristicOptions heuristic;
  void Validate(const shaping::SkillPool& pool) const;  // throws kConfig
};

void to_json(nlohmann::json& j, const SelectorConfig& c);
void from_json(const nlohmann::json& j, SelectorConfig& c);

// Selection happens at epochs 50, 100, ... for cycle 50; never at epoch 0.
inline bool IsSelectionEpoch(int epoch, int cycle) { return epoch > 0 && epoch % cycle == 0; }

// Owns the active skill and the records of the running cycle.
class SkillSelector {
 public:
  SkillSelector(shaping::SkillPool pool, SelectorConfig config,
                std::shared_ptr<SelectionBackend> backend = nullptr);

  const std::string& active_skill() const { return active_; }
  const TrainingRecords& records() const { return records_; }
  const std::vector<std::string>& history() const { return history_; }
  void set_log(DialogueLog* log) { log_ = log; }

  void RecordEpoch(const std::map<std::string, double>& metrics, double skill_reward);
  // Call after epoch `epoch` (1-based count of completed epochs). Returns the
  // outcome when a selection happened; the records then restart.
  std::optional<SelectionOutcome> MaybeSelect(int epoch, const std::string& replay_manifest = "");

  nlohmann::json ToJson() const;
  void RestoreJson(const nlohmann::json& j);

 private:
  shaping::SkillPool pool_;
  SelectorConfig config_;
  std::shared_ptr<SelectionBackend> backend_;
  DialogueLog* log_ = nullptr;
  std::string active_;
  std::vector<std::string> history_;
  TrainingRecords records_;
};

}  // namespace rewardlab::selector

#endif  // REWARDLAB_SELECTOR_SELECTOR_H_
