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

#include "rewardlab/xt/xt.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rewardlab/common/error.h"
#include "rewardlab/common/rng.h"

namespace rewardlab::xt {

namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

int ParseInt(const std::string& text, int line, const char* column) {
  try {
    size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  Fail(ErrorCode::kIngestion,
       "line " + std::to_string(line) + ": " + column + " is not an integer: '" + text + "'");
}

void CheckRecord(const EventRecord& e, int line) {
  auto bad = [line](const std::string& why) {
    Fail(ErrorCode::kIngestion, "line " + std::to_string(line) + ": " + why);
  };
  auto in_range = [](int x, int y) { return x >= 1 && x <= kZonesX && y >= 1 && y <= kZonesY; };
  if (!in_range(e.start_x, e.start_y)) bad("start zone out of range");
  if (e.type == EventType::kShot) {
    if (e.end_x != 0 || e.end_y != 0) bad("shot with an end zone");
    if (e.outcome == Outcome::kSuccess) bad("shot outcome must be goal or fail");
  } else {
    if (!in_range(e.end_x, e.end_y)) bad("pass end zone missing or out of range");
    if (e.outcome == Outcome::kGoal) bad("goal outcome on a pass");
  }
}

std::string_view OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kSuccess: return "success";
    case Outcome::kFail: return "fail";
    case Outcome::kGoal: return "goal";
  }
  return "fail";
}

}  // namespace

std::vector<EventRecord> ReadEventsCsv(std::istream& in) {
  std::string line;
  int n = 1;
  Require(static_cast<bool>(std::getline(in, line)), ErrorCode::kIngestion, "line 1: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  Require(line == kEventCsvHeader, ErrorCode::kIngestion,
          "line 1: expected header '" + std::string(kEventCsvHeader) + "'");
  std::vector<EventRecord> events;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = SplitCsv(line);
    Require(f.size() == 8, ErrorCode::kIngestion,
            "line " + std::to_string(n) + ": expected 8 columns, got " + std::to_string(f.size()));
    EventRecord e;
    e.match_id = f[0];
    e.team = f[1];
    if (f[2] == "pass") {
      e.type = EventType::kPass;
    } else if (f[2] == "shot") {
      e.type = EventType::kShot;
    } else {
      Fail(ErrorCode::kIngestion, "line " + std::to_string(n) + ": unknown kind '" + f[2] + "'");
    }
    e.start_x = ParseInt(f[3], n, "start_x");
    e.start_y = ParseInt(f[4], n, "start_y");
    e.end_x = f[5].empty() ? 0 : ParseInt(f[5], n, "end_x");
    e.end_y = f[6].empty() ? 0 : ParseInt(f[6], n, "end_y");
    if (f[7] == "success") {
      e.outcome = Outcome::kSuccess;
    } else if (f[7] == "fail") {
      e.outcome = Outcome::kFail;
    } else if (f[7] == "goal") {
      e.outcome = Outcome::kGoal;
    } else {
      Fail(ErrorCode::kIngestion,
           "line " + std::to_string(n) + ": unknown outcome '" + f[7] + "'");
    }
    CheckRecord(e, n);
    events.push_back(std::move(e));
  }
  return events;
}

std::vector<EventRecord> ReadEventsCsv(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kIngestion, "cannot read " + path);
  return ReadEventsCsv(in);
}

void WriteEventsCsv(std::ostream& out, const std::vector<EventRecord>& events) {
  out << kEventCsvHeader << '\n';
  for (const auto& e : events) {
    out << e.match_id << ',' << e.team << ',' << (e.type == EventType::kShot ? "shot" : "pass")
        << ',' << e.start_x << ',' << e.start_y << ',';
    if (e.type == EventType::kPass) out << e.end_x << ',' << e.end_y;
    else out << ',';
    out << ',' << OutcomeName(e.outcome) << '\n';
  }
}

void WriteEventsCsv(const std::string& path, const std::vector<EventRecord>& events) {
  std::ofstream out(path);
  Require(out.good(), ErrorCode::kIo, "cannot write " + path);
  WriteEventsCsv(out, events);
}

void XtModel::Validate() const {
  Require(s.size() == kNumZones && g.size() == kNumZones && m.size() == kNumZones &&
              T.size() == static_cast<size_t>(kNumZones) * kNumZones,
          ErrorCode::kValidation, "xT model has the wrong shape");
  for (int z = 0; z < kNumZones; ++z) {
    const bool ok = s[z] >= 0 && s[z] <= 1 && g[z] >= 0 && g[z] <= 1 && m[z] >= 0 &&
                    m[z] <= 1 && s[z] + m[z] <= 1 + 1e-12;
    Require(ok, ErrorCode::kValidation, "zone " + std::to_string(z) + " has invalid probabilities");
    double row = 0.0;
    for (int k = 0; k < kNumZones; ++k) {
      const double t = Transition(z, k);
      Require(t >= 0.0, ErrorCode::kValidation, "negative transition probability");
      row += t;
    }
    Require(std::abs(row - 1.0) <= 1e-12, ErrorCode::kValidation,
            "transition row " + std::to_string(z) + " sums to " + std::to_string(row));
  }
}

nlohmann::json ModelToJson(const XtModel& model) {
  return {{"zones_x", kZonesX}, {"zones_y", kZonesY}, {"s", model.s}, {"g", model.g},
          {"m", model.m},       {"T", model.T},       {"xt", model.xt}};
}

XtModel ModelFromJson(const nlohmann::json& j) {
  try {
    Require(j.at("zones_x").get<int>() == kZonesX && j.at("zones_y").get<int>() == kZonesY,
            ErrorCode::kLoad, "xT model grid must be 21x15");
    XtModel m;
    m.s = j.at("s").get<std::vector<double>>();
    m.g = j.at("g").get<std::vector<double>>();
    m.m = j.at("m").get<std::vector<double>>();
    m.T = j.at("T").get<std::vector<double>>();
    m.xt = j.value("xt", std::vector<double>{});
    m.Validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kLoad, std::string("malformed xT model: ") + e.what());
  } catch (const Error& e) {
    Fail(ErrorCode::kLoad, e.what());
  }
}

XtModel EstimateProbs(std::span<const EventRecord> events, const EstimateOptions& options) {
  Require(!events.empty(), ErrorCode::kIngestion, "no events");
  Require(options.alpha >= 0.0, ErrorCode::kValidation, "alpha must be >= 0");
  std::vector<double> shots(kNumZones, 0), goals(kNumZones, 0), passes(kNumZones, 0),
      completed(kNumZones, 0);
  std::vector<double> dest(static_cast<size_t>(kNumZones) * kNumZones, 0.0);
  int line = 1;
  for (const auto& e : events) {
    CheckRecord(e, ++line);
    const int from = ZoneIndex(e.start_x - 1, e.start_y - 1);
    if (e.type == EventType::kShot) {
      shots[from] += 1;
      if (e.outcome == Outcome::kGoal) goals[from] += 1;
      continue;
    }
    passes[from] += 1;
    const bool ok = e.outcome == Outcome::kSuccess;
    if (ok) completed[from] += 1;
    if (ok || !options.success_weighted) {
      dest[static_cast<size_t>(from) * kNumZones + ZoneIndex(e.end_x - 1, e.end_y - 1)] += 1;
    }
  }
  XtModel model;
  for (int z = 0; z < kNumZones; ++z) {
    const double total = shots[z] + passes[z];
    model.s[z] = total > 0 ? shots[z] / total : 0.0;
    model.m[z] = 1.0 - model.s[z];
    if (options.success_weighted && passes[z] > 0) model.m[z] *= completed[z] / passes[z];
    model.g[z] = shots[z] > 0 ? goals[z] / shots[z] : 0.0;
    double row = 0.0;
    for (int k = 0; k < kNumZones; ++k) row += dest[static_cast<size_t>(z) * kNumZones + k];
    const double denom = row + options.alpha * kNumZones;
    for (int k = 0; k < kNumZones; ++k) {
      model.Transition(z, k) =
          denom > 0 ? (dest[static_cast<size_t>(z) * kNumZones + k] + options.alpha) / denom
                    : 1.0 / kNumZones;
    }
  }
  return model;
}

std::vector<double> XtStep(const XtModel& model, std::span<const double> xt) {
  std::vector<double> next(kNumZones);
  for (int z = 0; z < kNumZones; ++z) {
    const double* row = &model.T[static_cast<size_t>(z) * kNumZones];
    double expect = 0.0;
    for (int k = 0; k < kNumZones; ++k) expect += row[k] * xt[k];
    next[z] = model.s[z] * model.g[z] + model.m[z] * expect;
  }
  return next;
}

SolveResult SolveXt(const XtModel& model, int max_iters, double tol) {
  model.Validate();
  Require(max_iters >= 1 && tol > 0.0, ErrorCode::kValidation, "invalid solver settings");
  SolveResult r;
  r.xt.assign(kNumZones, 0.0);
  while (r.iterations < max_iters) {
    std::vector<double> next = XtStep(model, r.xt);
    double delta = 0.0;
    for (int z = 0; z < kNumZones; ++z) delta = std::max(delta, std::abs(next[z] - r.xt[z]));
    r.xt = std::move(next);
    r.deltas.push_back(delta);
    ++r.iterations;
    if (delta < tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

std::pair<int, int> ZoneOf(const football::MatchState& state, football::Cell cell) {
  Require(state.InPitch(cell), ErrorCode::kMapping,
          "cell (" + std::to_string(cell.x) + "," + std::to_string(cell.y) + ") is off the pitch");
  return {cell.x * kZonesX / state.width, cell.y * kZonesY / state.height};
}

double XtPotential(const football::MatchState& state, std::span<const double> grid) {
  Require(grid.size() == kNumZones, ErrorCode::kDimension, "xT grid must have 315 zones");
  if (state.done) return 0.0;
  const auto [zx, zy] = ZoneOf(state, state.ball.pos);
  return grid[ZoneIndex(zx, zy)];
}

XtScorer::XtScorer(std::vector<double> grid) : grid_(std::move(grid)) {
  Require(grid_.size() == kNumZones, ErrorCode::kDimension, "xT grid must have 315 zones");
}

double XtScorer::Score(const football::MatchState& state, const shaping::Skill&) {
  return XtPotential(state, grid_);
}

void WriteGridCsv(const std::string& path, std::span<const double> grid) {
  Require(grid.size() == kNumZones, ErrorCode::kDimension, "xT grid must have 315 zones");
  std::ofstream out(path);
  Require(out.good(), ErrorCode::kIo, "cannot write " + path);
  out.precision(17);
  out << "zone_x,zone_y,xt\n";
  for (int zx = 0; zx < kZonesX; ++zx) {
    for (int zy = 0; zy < kZonesY; ++zy) {
      out << zx + 1 << ',' << zy + 1 << ',' << grid[ZoneIndex(zx, zy)] << '\n';
    }
  }
}

std::vector<double> ReadGridCsv(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kLoad, "cannot read " + path);
  std::string line;
  Require(std::getline(in, line) && line == "zone_x,zone_y,xt", ErrorCode::kLoad,
          path + ": bad header");
  std::vector<double> grid(kNumZones, 0.0);
  std::vector<bool> seen(kNumZones, false);
  int n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const auto f = SplitCsv(line);
    int zx = 0, zy = 0;
    double v = 0.0;
    try {
      Require(f.size() == 3, ErrorCode::kLoad, "expected 3 columns");
      zx = std::stoi(f[0]);
      zy = std::stoi(f[1]);
      v = std::stod(f[2]);
    } catch (const std::exception& e) {
      Fail(ErrorCode::kLoad, path + " line " + std::to_string(n) + ": " + e.what());
    }
    Require(zx >= 1 && zx <= kZonesX && zy >= 1 && zy <= kZonesY, ErrorCode::kLoad,
            path + " line " + std::to_string(n) + ": zone out of range");
    grid[ZoneIndex(zx - 1, zy - 1)] = v;
    seen[ZoneIndex(zx - 1, zy - 1)] = true;
  }
  Require(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }), ErrorCode::kLoad,
          path + ": missing zones");
  return grid;
}

render::Image RenderHeatmap(std::span<const double> grid, int cell_px) {
  Require(grid.size() == kNumZones, ErrorCode::kDimension, "xT grid must have 315 zones");
  Require(cell_px >= 1, ErrorCode::kConfig, "cell size must be positive");
  const double top = *std::max_element(grid.begin(), grid.end());
  const render::Rgb lo{34, 139, 34}, hi{255, 255, 255};
  render::Image img(kZonesX * cell_px, kZonesY * cell_px, lo);
  for (int zx = 0; zx < kZonesX; ++zx) {
    for (int zy = 0; zy < kZonesY; ++zy) {
      const double t = top > 0 ? std::clamp(grid[ZoneIndex(zx, zy)] / top, 0.0, 1.0) : 0.0;
      auto mix = [t](uint8_t a, uint8_t b) {
        return static_cast<uint8_t>(std::lround(a + t * (b - a)));
      };
      const render::Rgb c{mix(lo.r, hi.r), mix(lo.g, hi.g), mix(lo.b, hi.b)};
      for (int y = 0; y < cell_px; ++y) {
        for (int x = 0; x < cell_px; ++x) img.Set(zx * cell_px + x, zy * cell_px + y, c);
      }
    }
  }
  return img;
}

std::vector<EventRecord> SyntheticEvents(const SynthOptions& options) {
  Require(options.matches >= 1 && options.events_per_match >= 1, ErrorCode::kConfig,
          "synthetic generator needs at least one match and one event");
  Rng rng(options.seed);
  std::vector<EventRecord> events;
  const double mid_y = (kZonesY + 1) / 2.0;
  for (int match = 0; match < options.matches; ++match) {
    const std::string id = "synthetic-" + std::to_string(match + 1);
    int x = 0, y = 0;
    bool fresh = true;
    for (int k = 0; k < options.events_per_match; ++k) {
      if (fresh) {
        x = 2 + static_cast<int>(rng.UniformInt(8));
        y = 1 + static_cast<int>(rng.UniformInt(kZonesY));
        fresh = false;
      }
      const double depth = std::max(0.0, (x - 14.0) / 7.0);
      const double central = 1.0 - std::abs(y - mid_y) / (mid_y - 1.0);
      const double p_shot = x >= 15 ? std::min(0.6, 0.05 + 0.55 * depth * central) : 0.0;
      EventRecord e;
      e.match_id = id;
      e.team = match % 2 == 0 ? "blue" : "red";
      e.start_x = x;
      e.start_y = y;
      if (rng.Uniform() < p_shot) {
        e.type = EventType::kShot;
        const double p_goal = 0.02 + 0.4 * depth * depth * central;
        e.outcome = rng.Uniform() < p_goal ? Outcome::kGoal : Outcome::kFail;
        events.push_back(e);
        fresh = true;
        continue;
      }
      e.type = EventType::kPass;
      const int dx = static_cast<int>(rng.UniformInt(7)) - 2;
      const int dy = static_cast<int>(rng.UniformInt(7)) - 3;
      e.end_x = std::clamp(x + dx, 1, kZonesX);
      e.end_y = std::clamp(y + dy, 1, kZonesY);
      const double p_ok = 0.85 - 0.04 * std::max(0, dx - 1) - 0.02 * std::abs(dy);
      e.outcome = rng.Uniform() < p_ok ? Outcome::kSuccess : Outcome::kFail;
      events.push_back(e);
      if (e.outcome == Outcome::kSuccess) {
        x = e.end_x;
        y = e.end_y;
      } else {
        fresh = true;
      }
    }
  }
  return events;
}

std::vector<EventRecord> FromMatchEvents(const football::MatchState& geometry,
                                         std::span<const football::MatchEvent> events,
                                         const std::string& match_id) {
  std::vector<EventRecord> out;
  for (const auto& ev : events) {
    if (ev.team != football::Team::kHome) continue;
    if (ev.kind != football::EventKind::kPass && ev.kind != football::EventKind::kShot) continue;
    EventRecord e;
    e.match_id = match_id;
    e.team = "home";
    const auto [sx, sy] = ZoneOf(geometry, ev.from);
    e.start_x = sx + 1;
    e.start_y = sy + 1;
    if (ev.kind == football::EventKind::kShot) {
      e.type = EventType::kShot;
      e.outcome = ev.success ? Outcome::kGoal : Outcome::kFail;
    } else {
      e.type = EventType::kPass;
      const auto [ex, ey] = ZoneOf(geometry, geometry.Clamp(ev.to));
      e.end_x = ex + 1;
      e.end_y = ey + 1;
      e.outcome = ev.success ? Outcome::kSuccess : Outcome::kFail;
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace rewardlab::xt
