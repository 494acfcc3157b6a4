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

#include "rewardlab/selector/selector.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rewardlab/common/error.h"

namespace rewardlab::selector {

using shaping::SkillCategory;

void TrainingRecords::Append(const std::map<std::string, double>& metrics,
                             double skill_reward_value) {
  if (epochs > 0) {
    Require(metrics.size() == series.size(), ErrorCode::kValidation,
            "record series changed between epochs");
  }
  for (const auto& [name, value] : metrics) {
    auto& s = series[name];
    Require(static_cast<int>(s.size()) == epochs, ErrorCode::kValidation,
            "record series '" + name + "' has the wrong length");
    s.push_back(value);
  }
  skill_reward.push_back(skill_reward_value);
  ++epochs;
}

void to_json(nlohmann::json& j, const PoolEntry& e) {
  j = {{"id", e.id},
       {"description", e.description},
       {"category", shaping::CategoryName(e.category)}};
}

void from_json(const nlohmann::json& j, PoolEntry& e) {
  e.id = j.at("id").get<std::string>();
  e.description = j.value("description", "");
  e.category = shaping::ParseCategory(j.at("category").get<std::string>());
}

void to_json(nlohmann::json& j, const SelectionRequest& r) {
  j = {{"epoch", r.epoch},
       {"replay_manifest", r.replay_manifest},
       {"initial_instruction", r.initial_instruction},
       {"pool", r.pool},
       {"last_skill", r.last_skill},
       {"last_skill_reward", r.last_skill_reward},
       {"records", r.records},
       {"used_skills", r.used_skills}};
}

void from_json(const nlohmann::json& j, SelectionRequest& r) {
  r.epoch = j.at("epoch").get<int>();
  r.replay_manifest = j.value("replay_manifest", "");
  r.initial_instruction = j.value("initial_instruction", "");
  r.pool = j.at("pool").get<std::vector<PoolEntry>>();
  r.last_skill = j.at("last_skill").get<std::string>();
  r.last_skill_reward = j.at("last_skill_reward").get<std::vector<double>>();
  r.records = j.at("records").get<std::map<std::string, std::vector<double>>>();
  r.used_skills = j.value("used_skills", std::vector<std::string>{});
}

void to_json(nlohmann::json& j, const SelectionResponse& r) {
  j = {{"skill", r.skill}, {"analysis", r.analysis}};
}

void from_json(const nlohmann::json& j, SelectionResponse& r) {
  r.skill = j.at("skill").get<std::string>();
  r.analysis = j.value("analysis", "");
}

double RoundTo2(double x) {
  const double r = std::round(x * 100.0) / 100.0;
  return r == 0.0 ? 0.0 : r;  // drop negative zero
}

namespace {

std::vector<double> Rounded(const std::vector<double>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(RoundTo2(x));
  return out;
}

std::string FormatList(const std::vector<double>& v) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ']';
  return os.str();
}

int PoolIndex(const SelectionRequest& r, const std::string& id) {
  for (size_t i = 0; i < r.pool.size(); ++i) {
    if (r.pool[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

bool Used(const SelectionRequest& r, const std::string& id) {
  return std::find(r.used_skills.begin(), r.used_skills.end(), id) != r.used_skills.end();
}

// Pool-order scan of `category` starting after `after` (cyclic), skipping the
// last skill. Unused skills win over used ones.
std::optional<std::string> PickInCategory(const SelectionRequest& r, SkillCategory category,
                                          int after) {
  const int n = static_cast<int>(r.pool.size());
  std::optional<std::string> fallback;
  for (int k = 1; k <= n; ++k) {
    const PoolEntry& e = r.pool[(after + k + n) % n];
    if (e.category != category || e.id == r.last_skill) continue;
    if (!Used(r, e.id)) return e.id;
    if (!fallback) fallback = e.id;
  }
  return fallback;
}

std::string Rotate(const SelectionRequest& r, SkillCategory from) {
  for (int step = 1; step <= shaping::kNumCategories; ++step) {
    const auto next =
        static_cast<SkillCategory>((static_cast<int>(from) + step) % shaping::kNumCategories);
    if (auto pick = PickInCategory(r, next, -1)) return *pick;
  }
  Fail(ErrorCode::kSelection, "no selectable skill other than " + r.last_skill);
}

}  // namespace

SelectionRequest BuildRequest(const TrainingRecords& records, const shaping::SkillPool& pool,
                              const std::string& last_skill,
                              const std::vector<std::string>& used_skills, int epoch,
                              const std::string& replay_manifest,
                              const std::string& initial_instruction) {
  Require(records.epochs >= 1, ErrorCode::kPrecondition, "no completed epoch in this cycle");
  pool.Find(last_skill);
  SelectionRequest r;
  r.epoch = epoch;
  r.replay_manifest = replay_manifest;
  r.initial_instruction = initial_instruction;
  for (const auto& s : pool.skills()) r.pool.push_back({s.id, s.description, s.category});
  r.last_skill = last_skill;
  r.last_skill_reward = Rounded(records.skill_reward);
  for (const auto& [name, values] : records.series) r.records[name] = Rounded(values);
  r.used_skills = used_skills;
  return r;
}

std::string PromptText(const SelectionRequest& r) {
  std::ostringstream os;
  if (!r.replay_manifest.empty()) os << "Replay frames: " << r.replay_manifest << "\n";
  os << r.initial_instruction << "\n\nTraining records (one value per epoch):\n";
  for (const auto& [name, values] : r.records) os << name << ": " << FormatList(values) << "\n";
  os << "\nAvailable skills:\n";
  for (const auto& e : r.pool) os << "- " << e.id << ": " << e.description << "\n";
  os << "\nThe current skill is " << r.last_skill << " with potential record "
     << FormatList(r.last_skill_reward) << ".\n"
     << "Pick a different skill to train next. Reply with\nAnalysis: <text>\nNext Skill: <id>\n";
  return os.str();
}

bool IsPlateau(const std::vector<double>& record, int window, double threshold) {
  const int n = std::min<int>(window, static_cast<int>(record.size()));
  if (n < 2) return true;
  const auto first = record.end() - n;
  double mx = (n - 1) / 2.0, my = 0.0;
  for (auto it = first; it != record.end(); ++it) my += *it;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (i - mx) * (i - mx);
    sxy += (i - mx) * (first[i] - my);
  }
  return std::abs(sxy / sxx) < threshold;
}

SelectionResponse HeuristicSelect(const SelectionRequest& r, const HeuristicOptions& options) {
  Require(r.pool.size() >= 2, ErrorCode::kSelection, "heuristic selection needs two skills");
  const int last = PoolIndex(r, r.last_skill);
  Require(last >= 0, ErrorCode::kLookup, "last skill '" + r.last_skill + "' not in pool");
  const SkillCategory category = r.pool[last].category;

  auto win = r.records.find("win_rate");
  if (win != r.records.end() && !win->second.empty() &&
      std::all_of(win->second.begin(), win->second.end(), [](double x) { return x == 0.0; }) &&
      options.scoring_skill != r.last_skill && PoolIndex(r, options.scoring_skill) >= 0) {
    return {options.scoring_skill, "No wins recorded; switching to the scoring skill."};
  }
  if (IsPlateau(r.last_skill_reward, options.plateau_window, options.plateau_slope)) {
    return {Rotate(r, category), "Potential of " + r.last_skill +
                                     " has plateaued; moving to the next category."};
  }
  if (auto pick = PickInCategory(r, category, last)) {
    return {*pick, "Potential of " + r.last_skill + " is still rising; staying in category " +
                       std::string(shaping::CategoryName(category)) + "."};
  }
  return {Rotate(r, category),
          "No other skill in category " + std::string(shaping::CategoryName(category)) + "."};
}

SelectionOutcome ExternalSelect(const SelectionRequest& request, SelectionBackend& backend,
                                const HeuristicOptions& options) {
  std::string warning;
  try {
    SelectionResponse response = backend.Select(request);
    if (PoolIndex(request, response.skill) >= 0) return {std::move(response), "external", ""};
    warning = "external selector returned unknown skill '" + response.skill + "'";
  } catch (const Error& e) {
    warning = std::string("external selector failed (") + std::string(ErrorCodeName(e.code())) +
              "): " + e.what();
  }
  return {HeuristicSelect(request, options), "fallback", warning};
}

DialogueLog::DialogueLog(const std::string& path)
    : out_(std::make_unique<std::ofstream>(path, std::ios::app)) {
  Require(out_->good(), ErrorCode::kIo, "cannot open dialogue log " + path);
}

void DialogueLog::Write(const SelectionRequest& request, const SelectionOutcome& outcome) {
  if (!out_) return;
  nlohmann::json j = {{"epoch", request.epoch},
                      {"request", request},
                      {"prompt", PromptText(request)},
                      {"response", outcome.response},
                      {"source", outcome.source}};
  if (!outcome.warning.empty()) j["warning"] = outcome.warning;
  *out_ << j.dump() << '\n';
  out_->flush();
}

void SelectorConfig::Validate(const shaping::SkillPool& pool) const {
  Require(cycle >= 1, ErrorCode::kConfig, "selection cycle must be >= 1");
  Require(pool.Contains(initial_skill), ErrorCode::kConfig,
          "initial skill '" + initial_skill + "' not in pool");
  Require(mode == "heuristic" || mode == "external", ErrorCode::kConfig,
          "selector mode must be heuristic or external");
  Require(heuristic.plateau_window >= 2 && heuristic.plateau_slope > 0.0, ErrorCode::kConfig,
          "invalid plateau settings");
}

void to_json(nlohmann::json& j, const SelectorConfig& c) {
  j = {{"cycle", c.cycle},
       {"initial_skill", c.initial_skill},
       {"mode", c.mode},
       {"initial_instruction", c.initial_instruction},
       {"plateau_window", c.heuristic.plateau_window},
       {"plateau_slope", c.heuristic.plateau_slope},
       {"scoring_skill", c.heuristic.scoring_skill}};
}

void from_json(const nlohmann::json& j, SelectorConfig& c) {
  const nlohmann::json defaults = SelectorConfig{};
  for (const auto& [key, value] : j.items()) {
    Require(defaults.contains(key), ErrorCode::kConfig, "unknown selector key '" + key + "'");
  }
  c.cycle = j.value("cycle", c.cycle);
  c.initial_skill = j.value("initial_skill", c.initial_skill);
  c.mode = j.value("mode", c.mode);
  c.initial_instruction = j.value("initial_instruction", c.initial_instruction);
  c.heuristic.plateau_window = j.value("plateau_window", c.heuristic.plateau_window);
  c.heuristic.plateau_slope = j.value("plateau_slope", c.heuristic.plateau_slope);
  c.heuristic.scoring_skill = j.value("scoring_skill", c.heuristic.scoring_skill);
}

SkillSelector::SkillSelector(shaping::SkillPool pool, SelectorConfig config,
                             std::shared_ptr<SelectionBackend> backend)
    : pool_(std::move(pool)), config_(std::move(config)), backend_(std::move(backend)) {
  config_.Validate(pool_);
  Require(config_.mode != "external" || backend_ != nullptr, ErrorCode::kConfig,
          "external selector mode needs a backend");
  active_ = config_.initial_skill;
  history_.push_back(active_);
}

void SkillSelector::RecordEpoch(const std::map<std::string, double>& metrics,
                                double skill_reward) {
  records_.Append(metrics, skill_reward);
}

std::optional<SelectionOutcome> SkillSelector::MaybeSelect(int epoch,
                                                           const std::string& replay_manifest) {
  if (!IsSelectionEpoch(epoch, config_.cycle) || records_.epochs == 0) return std::nullopt;
  const SelectionRequest request = BuildRequest(records_, pool_, active_, history_, epoch,
                                                replay_manifest, config_.initial_instruction);
  SelectionOutcome outcome =
      config_.mode == "external"
          ? ExternalSelect(request, *backend_, config_.heuristic)
          : SelectionOutcome{HeuristicSelect(request, config_.heuristic), "heuristic", ""};
  if (log_) log_->Write(request, outcome);
  active_ = outcome.response.skill;
  history_.push_back(active_);
  records_.Clear();
  return outcome;
}

nlohmann::json SkillSelector::ToJson() const {
  return {{"active", active_},
          {"history", history_},
          {"records", {{"series", records_.series},
                       {"skill_reward", records_.skill_reward},
                       {"epochs", records_.epochs}}}};
}

void SkillSelector::RestoreJson(const nlohmann::json& j) {
  active_ = j.at("active").get<std::string>();
  pool_.Find(active_);
  history_ = j.at("history").get<std::vector<std::string>>();
  const auto& rec = j.at("records");
  records_.series = rec.at("series").get<std::map<std::string, std::vector<double>>>();
  records_.skill_reward = rec.at("skill_reward").get<std::vector<double>>();
  records_.epochs = rec.at("epochs").get<int>();
}

}  // namespace rewardlab::selector
