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

#include "rewardlab/metrics/metrics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rewardlab/common/error.h"

namespace rewardlab::metrics {

using football::Team;

namespace {

void Accumulate(const std::vector<double>& v, double& sum, size_t& n) {
  for (double x : v) sum += x;
  n += v.size();
}

std::string FormatDouble(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

EpochRecord Aggregate(int epoch, const std::vector<EpisodeLog>& episodes,
                      const ShapingStream& stream, const std::string& skill) {
  EpochRecord r;
  r.epoch = epoch;
  r.skill = skill;
  r.episodes = static_cast<int>(episodes.size());
  auto mean = [](const std::vector<double>& v) {
    double sum = 0.0;
    size_t n = 0;
    Accumulate(v, sum, n);
    return n ? sum / n : 0.0;
  };
  r.mean_raw_potential = mean(stream.raw_potential);
  r.mean_norm_potential = mean(stream.norm_potential);
  r.mean_shaping = mean(stream.shaping);
  if (episodes.empty()) return r;
  int wins = 0, shots = 0, goals = 0, attempts = 0, completed = 0, possession = 0;
  double formation = 0.0, env = 0.0;
  size_t n_formation = 0;
  for (const auto& e : episodes) {
    r.steps += e.steps;
    if (e.home_score > e.away_score) ++wins;
    const auto c = football::CountEvents(e.events, Team::kHome);
    shots += c.shots;
    goals += c.goals;
    attempts += c.pass_attempts;
    completed += c.pass_successes;
    possession += e.home_possession_steps;
    Accumulate(e.formation, formation, n_formation);
    env += e.env_return;
  }
  const double n = static_cast<double>(episodes.size());
  r.win_rate = wins / n;
  r.total_shots = shots / n;
  r.shot_success = shots > 0 ? static_cast<double>(goals) / shots : 0.0;
  r.passes = attempts / n;
  r.pass_success = attempts > 0 ? static_cast<double>(completed) / attempts : 0.0;
  r.possession_share = r.steps > 0 ? static_cast<double>(possession) / r.steps : 0.0;
  r.formation_score = n_formation ? formation / n_formation : 0.0;
  r.mean_env_return = env / n;
  return r;
}

std::vector<std::string_view> MetricsColumns() {
  return {"epoch",          "episodes",          "steps",
          "win_rate",       "total_shots",       "shot_success",
          "passes",         "pass_success",      "possession_share",
          "formation_score", "mean_raw_potential", "mean_norm_potential",
          "mean_shaping",   "mean_env_return",   "skill"};
}

std::string MetricsHeader() {
  std::string h;
  for (auto c : MetricsColumns()) {
    if (!h.empty()) h += ',';
    h += c;
  }
  return h;
}

std::string MetricsRow(const EpochRecord& r) {
  std::ostringstream os;
  os << r.epoch << ',' << r.episodes << ',' << r.steps;
  for (double x : {r.win_rate, r.total_shots, r.shot_success, r.passes, r.pass_success,
                   r.possession_share, r.formation_score, r.mean_raw_potential,
                   r.mean_norm_potential, r.mean_shaping, r.mean_env_return}) {
    os << ',' << FormatDouble(x);
  }
  os << ',' << r.skill;
  return os.str();
}

MetricsWriter::MetricsWriter(const std::string& path) : out_(path, std::ios::trunc) {
  Require(out_.good(), ErrorCode::kIo, "cannot write metrics " + path);
  out_ << kMetricsSchema << '\n' << MetricsHeader() << '\n';
  out_.flush();
}

void MetricsWriter::Write(const EpochRecord& r) {
  out_ << MetricsRow(r) << '\n';
  out_.flush();
}

void CheckMetricsSchema(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kIo, "cannot read metrics " + path);
  std::string schema, header;
  std::getline(in, schema);
  std::getline(in, header);
  Require(schema == kMetricsSchema, ErrorCode::kValidation,
          path + ": schema line '" + schema + "' differs from '" + kMetricsSchema + "'");
  Require(header == MetricsHeader(), ErrorCode::kValidation,
          path + ": column drift, header '" + header + "'");
}

std::vector<EpochRecord> ReadMetricsCsv(const std::string& path) {
  CheckMetricsSchema(path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::vector<EpochRecord> out;
  int n = 2;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const auto f = Split(line);
    Require(f.size() == MetricsColumns().size(), ErrorCode::kValidation,
            path + " line " + std::to_string(n) + ": wrong column count");
    EpochRecord r;
    try {
      r.epoch = std::stoi(f[0]);
      r.episodes = std::stoi(f[1]);
      r.steps = std::stoi(f[2]);
      double* fields[] = {&r.win_rate,           &r.total_shots,         &r.shot_success,
                          &r.passes,             &r.pass_success,        &r.possession_share,
                          &r.formation_score,    &r.mean_raw_potential,  &r.mean_norm_potential,
                          &r.mean_shaping,       &r.mean_env_return};
      for (int k = 0; k < 11; ++k) *fields[k] = std::stod(f[3 + k]);
    } catch (const std::exception& e) {
      Fail(ErrorCode::kValidation, path + " line " + std::to_string(n) + ": " + e.what());
    }
    r.skill = f[14];
    out.push_back(std::move(r));
  }
  return out;
}

StyleSummary StyleSummary::FromRecords(const std::vector<EpochRecord>& records) {
  StyleSummary s;
  if (records.empty()) return s;
  for (const auto& r : records) {
    const double v[6] = {r.total_shots,      r.shot_success,   r.passes,
                         r.pass_success,     r.possession_share, r.formation_score};
    for (int k = 0; k < 6; ++k) s.values[k] += v[k];
  }
  for (double& v : s.values) v /= static_cast<double>(records.size());
  return s;
}

RadarSummary Radar(const StyleSummary& eval, const StyleSummary& reference,
                   const std::string& reference_name) {
  RadarSummary r;
  r.reference_name = reference_name;
  r.evaluated = eval.values;
  r.reference = reference.values;
  for (int k = 0; k < 6; ++k) {
    if (reference.values[k] <= 0.0) {
      r.ratio[k] = 0.0;
      r.warnings.push_back("reference dimension " + std::string(kRadarDimensions[k]) +
                           " is zero; pinned to 0");
    } else {
      r.ratio[k] = eval.values[k] / reference.values[k];
    }
    r.value[k] = std::clamp(r.ratio[k], 0.0, 1.0);
  }
  return r;
}

void WriteRadarCsv(const std::string& path, const RadarSummary& radar) {
  std::ofstream out(path);
  Require(out.good(), ErrorCode::kIo, "cannot write " + path);
  out << "# normalized by " << radar.reference_name << '\n';
  out << "dimension,evaluated,reference,ratio,value\n";
  for (int k = 0; k < 6; ++k) {
    out << kRadarDimensions[k] << ',' << FormatDouble(radar.evaluated[k]) << ','
        << FormatDouble(radar.reference[k]) << ',' << FormatDouble(radar.ratio[k]) << ','
        << FormatDouble(radar.value[k]) << '\n';
  }
}

render::Image RenderRadarChart(const RadarSummary& radar, int size) {
  Require(size >= 20, ErrorCode::kConfig, "chart size must be >= 20");
  render::Image img(size, size, {255, 255, 255});
  const double c = (size - 1) / 2.0, radius = size * 0.42;
  auto vertex = [&](int k, double scale) {
    const double a = -std::numbers::pi / 2 + k * std::numbers::pi / 3;
    return std::pair<int, int>{static_cast<int>(std::lround(c + scale * radius * std::cos(a))),
                               static_cast<int>(std::lround(c + scale * radius * std::sin(a)))};
  };
  const render::Rgb grid{190, 190, 190}, shape{0, 0, 255};
  for (double ring : {0.5, 1.0}) {
    for (int k = 0; k < 6; ++k) {
      const auto [x0, y0] = vertex(k, ring);
      const auto [x1, y1] = vertex((k + 1) % 6, ring);
      img.DrawLine(x0, y0, x1, y1, grid);
    }
  }
  for (int k = 0; k < 6; ++k) {
    const auto [x, y] = vertex(k, 1.0);
    img.DrawLine(static_cast<int>(c), static_cast<int>(c), x, y, grid);
  }
  for (int k = 0; k < 6; ++k) {
    const auto [x0, y0] = vertex(k, radar.value[k]);
    const auto [x1, y1] = vertex((k + 1) % 6, radar.value[(k + 1) % 6]);
    img.DrawLine(x0, y0, x1, y1, shape);
    img.FillCircle(x0, y0, 2, shape);
  }
  return img;
}

}  // namespace rewardlab::metrics
