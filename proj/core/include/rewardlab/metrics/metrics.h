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

#ifndef REWARDLAB_METRICS_METRICS_H_
#define REWARDLAB_METRICS_METRICS_H_

#include <array>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rewardlab/football/events.h"
#include "rewardlab/render/image.h"

namespace rewardlab::metrics {

// Raw per-episode log kept by rollouts. Together with ShapingStream every
// EpochRecord field is a function of these.
struct EpisodeLog {
  std::vector<football::MatchEvent> events;
  int steps = 0;
  int home_score = 0;
  int away_score = 0;
  int home_possession_steps = 0;  // steps whose end state has home possession
  std::vector<double> formation;  // correct-formation score per step (state before it)
  double env_return = 0.0;        // undiscounted environment reward
};

// Per-step shaping values of an epoch's rollouts.
struct ShapingStream {
  std::vector<double> raw_potential;   // phi of the state before the step
  std::vector<double> norm_potential;  // after normalization (raw if off)
  std::vector<double> shaping;         // F
};

struct EpochRecord {
  int epoch = 0;
  int episodes = 0;
  int steps = 0;
  double win_rate = 0.0;
  double total_shots = 0.0;   // mean home shots per episode
  double shot_success = 0.0;  // goals / shots, 0 without shots
  double passes = 0.0;        // mean home pass attempts per episode
  double pass_success = 0.0;  // completed / attempted, 0 without passes
  double possession_share = 0.0;
  double formation_score = 0.0;
  double mean_raw_potential = 0.0;
  double mean_norm_potential = 0.0;
  double mean_shaping = 0.0;
  double mean_env_return = 0.0;
  std::string skill;
  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

// Episode metrics over episodes finished in the epoch, potential means over
// every rollout step.
EpochRecord Aggregate(int epoch, const std::vector<EpisodeLog>& episodes,
                      const ShapingStream& stream, const std::string& skill);

// Metrics CSV: a schema line, a header, one row per epoch.
inline constexpr char kMetricsSchema[] = "# schema=rewardlab-metrics/1";
std::vector<std::string_view> MetricsColumns();
std::string MetricsHeader();
std::string MetricsRow(const EpochRecord& r);

class MetricsWriter {
 public:
  // Truncates and writes schema + header. Throws kIo.
  explicit MetricsWriter(const std::string& path);
  void Write(const EpochRecord& r);

 private:
  std::ofstream out_;
};

// Throws kValidation if the schema line or header differ from this build's.
void CheckMetricsSchema(const std::string& path);
std::vector<EpochRecord> ReadMetricsCsv(const std::string& path);

// The six style dimensions.
inline constexpr std::array<std::string_view, 6> kRadarDimensions = {
    "shots", "shot_success", "passes", "pass_success", "possession", "formation"};

struct StyleSummary {
  std::array<double, 6> values{};
  static StyleSummary FromRecords(const std::vector<EpochRecord>& records);
};

struct RadarSummary {
  std::array<double, 6> evaluated{};
  std::array<double, 6> reference{};
  std::array<double, 6> ratio{};  // evaluated / reference, unclipped
  std::array<double, 6> value{};  // ratio clipped to [0, 1]
  std::vector<std::string> warnings;
  std::string reference_name;
};

// Each dimension divided by the reference run's value. A zero reference
// pins the dimension to 0 and adds a warning.
RadarSummary Radar(const StyleSummary& eval, const StyleSummary& reference,
                   const std::string& reference_name = "reference");
void WriteRadarCsv(const std::string& path, const RadarSummary& radar);
// Hexagonal chart: grid rings at 0.5 and 1, the value polygon on top.
render::Image RenderRadarChart(const RadarSummary& radar, int size = 200);

}  // namespace rewardlab::metrics

#endif  // REWARDLAB_METRICS_METRICS_H_
