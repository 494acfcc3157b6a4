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

#ifndef REWARDLAB_XT_XT_H_
#define REWARDLAB_XT_XT_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rewardlab/football/events.h"
#include "rewardlab/football/match_state.h"
#include "rewardlab/render/image.h"
#include "rewardlab/shaping/engine.h"

namespace rewardlab::xt {

inline constexpr int kZonesX = 21;
inline constexpr int kZonesY = 15;
inline constexpr int kNumZones = kZonesX * kZonesY;

// 0-based zone index; zx in [0, 21), zy in [0, 15).
inline int ZoneIndex(int zx, int zy) { return zx * kZonesY + zy; }

enum class EventType { kPass, kShot };
enum class Outcome { kSuccess, kFail, kGoal };

// One possession event, zones 1-based as in the CSV. Attacks run toward
// zone x = 21. Shots have no end zone (end_x = end_y = 0).
struct EventRecord {
  std::string match_id;
  std::string team;
  EventType type = EventType::kPass;
  int start_x = 1;
  int start_y = 1;
  int end_x = 0;
  int end_y = 0;
  Outcome outcome = Outcome::kSuccess;
  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

// CSV columns: match_id,team,kind,start_x,start_y,end_x,end_y,outcome
//   kind     pass | shot
//   end_x/y  empty for shots
//   outcome  success | fail for passes, goal | fail for shots
inline constexpr char kEventCsvHeader[] = "match_id,team,kind,start_x,start_y,end_x,end_y,outcome";

// Throws kIngestion naming the offending line.
std::vector<EventRecord> ReadEventsCsv(std::istream& in);
std::vector<EventRecord> ReadEventsCsv(const std::string& path);
void WriteEventsCsv(std::ostream& out, const std::vector<EventRecord>& events);
void WriteEventsCsv(const std::string& path, const std::vector<EventRecord>& events);

struct EstimateOptions {
  double alpha = 1.0;             // Laplace count added to every destination; 0 disables
  bool success_weighted = false;  // T from completed passes, m scaled by completion rate
};

// Per-zone probabilities (row-major over ZoneIndex) and, once solved, xT.
struct XtModel {
  std::vector<double> s = std::vector<double>(kNumZones, 0.0);
  std::vector<double> g = std::vector<double>(kNumZones, 0.0);
  std::vector<double> m = std::vector<double>(kNumZones, 1.0);
  std::vector<double> T = std::vector<double>(kNumZones * kNumZones, 1.0 / kNumZones);
  std::vector<double> xt;  // empty until solved

  double& Transition(int from, int to) { return T[static_cast<size_t>(from) * kNumZones + to]; }
  double Transition(int from, int to) const {
    return T[static_cast<size_t>(from) * kNumZones + to];
  }
  // Ranges, s + m <= 1 and stochastic T rows (1e-12). Throws kValidation.
  void Validate() const;
};

nlohmann::json ModelToJson(const XtModel& model);
XtModel ModelFromJson(const nlohmann::json& j);  // throws kLoad

// s = shots / (shots + passes), m = 1 - s, g = goals / shots, T = smoothed
// pass-destination frequencies. Zones without events keep s = 0, m = 1 and a
// uniform T row. Throws kIngestion for an empty or invalid event set.
XtModel EstimateProbs(std::span<const EventRecord> events, const EstimateOptions& options = {});

struct SolveResult {
  std::vector<double> xt;
  std::vector<double> deltas;  // sup-norm change per iteration
  int iterations = 0;
  bool converged = false;
};

// One synchronous update: s*g + m * (T xt).
std::vector<double> XtStep(const XtModel& model, std::span<const double> xt);

// Iterates from zero until the sup-norm change drops below tol or max_iters
// is reached. Throws kValidation for an invalid model.
SolveResult SolveXt(const XtModel& model, int max_iters = 1000, double tol = 1e-12);

// Pitch-to-zone map: zx = floor(x * 21 / W), zy = floor(y * 15 / H).
// Throws kMapping for a cell outside the pitch.
std::pair<int, int> ZoneOf(const football::MatchState& state, football::Cell cell);

// xT of the ball's zone; 0 for terminal states. Throws kDimension if the
// grid is not 21x15.
double XtPotential(const football::MatchState& state, std::span<const double> grid);

class XtScorer : public shaping::StateScorer {
 public:
  explicit XtScorer(std::vector<double> grid);
  double Score(const football::MatchState& state, const shaping::Skill& skill) override;
  const std::vector<double>& grid() const { return grid_; }

 private:
  std::vector<double> grid_;
};

// Grid CSV, long format: header "zone_x,zone_y,xt" then one row per zone,
// 1-based, x outer.
void WriteGridCsv(const std::string& path, std::span<const double> grid);
std::vector<double> ReadGridCsv(const std::string& path);  // throws kLoad

// Heatmap with one square of cell_px pixels per zone, pitch green for 0
// shading to white at the grid maximum.
render::Image RenderHeatmap(std::span<const double> grid, int cell_px = 10);

struct SynthOptions {
  int matches = 20;
  int events_per_match = 500;
  uint64_t seed = 2018;
};

// Event logs with a realistic shape: possessions start deep, passes drift
// forward, shots are taken mostly near the goal and convert more centrally.
std::vector<EventRecord> SyntheticEvents(const SynthOptions& options = {});

// Home passes and shots from an env event log, mapped onto zones.
std::vector<EventRecord> FromMatchEvents(const football::MatchState& geometry,
                                         std::span<const football::MatchEvent> events,
                                         const std::string& match_id);

}  // namespace rewardlab::xt

#endif  // REWARDLAB_XT_XT_H_
