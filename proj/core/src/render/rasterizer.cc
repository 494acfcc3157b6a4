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

#include "rewardlab/render/rasterizer.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "rewardlab/common/error.h"

namespace rewardlab::render {

using football::Cell;
using football::MatchState;
using football::Role;
using football::Team;

std::set<Rgb> DocumentedColors() {
  using namespace palette;
  std::set<Rgb> colors = {kPitch, kMarking, kHome, kAway, kBall, kHomeLine, kAwayLine};
  for (Rgb base : {kPitch, kMarking}) {
    colors.insert(Blend(base, kHome));
    colors.insert(Blend(base, kAway));
    colors.insert(Blend(Blend(base, kHome), kAway));
  }
  return colors;
}

void to_json(nlohmann::json& j, const RenderOptions& o) {
  j = {{"width", o.width},
       {"height", o.height},
       {"player_radius", o.player_radius},
       {"ball_radius", o.ball_radius},
       {"draw_markings", o.draw_markings},
       {"draw_hulls", o.draw_hulls},
       {"draw_formation_lines", o.draw_formation_lines},
       {"draw_players", o.draw_players},
       {"draw_ball", o.draw_ball}};
}

void from_json(const nlohmann::json& j, RenderOptions& o) {
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("width", o.width);
  get("height", o.height);
  get("player_radius", o.player_radius);
  get("ball_radius", o.ball_radius);
  get("draw_markings", o.draw_markings);
  get("draw_hulls", o.draw_hulls);
  get("draw_formation_lines", o.draw_formation_lines);
  get("draw_players", o.draw_players);
  get("draw_ball", o.draw_ball);
}

Point CellCenter(const MatchState& state, Cell cell, const RenderOptions& options) {
  return {(2 * static_cast<int64_t>(cell.x) + 1) * options.width / (2 * state.width),
          (2 * static_cast<int64_t>(cell.y) + 1) * options.height / (2 * state.height)};
}

Cell NearestCell(const MatchState& state, int px, int py, const RenderOptions& options) {
  Cell best{0, 0};
  int64_t best_d = -1;
  for (int x = 0; x < state.width; ++x) {
    const int64_t dx = CellCenter(state, {x, 0}, options).x - px;
    if (best_d < 0 || dx * dx < best_d) {
      best_d = dx * dx;
      best.x = x;
    }
  }
  best_d = -1;
  for (int y = 0; y < state.height; ++y) {
    const int64_t dy = CellCenter(state, {0, y}, options).y - py;
    if (best_d < 0 || dy * dy < best_d) {
      best_d = dy * dy;
      best.y = y;
    }
  }
  return best;
}

std::vector<Point> TeamHull(const MatchState& state, Team team, const RenderOptions& options) {
  std::vector<Point> points;
  for (int id : state.Outfield(team)) points.push_back(CellCenter(state, state.players[id].pos, options));
  if (points.empty()) return {};
  return ConvexHull(std::move(points));
}

std::vector<std::pair<int, int>> HullPixels(const std::vector<Point>& hull) {
  std::vector<std::pair<int, int>> pixels;
  if (hull.empty()) return pixels;
  if (hull.size() == 1) return {{static_cast<int>(hull[0].x), static_cast<int>(hull[0].y)}};
  if (hull.size() == 2) {
    return LinePixels(static_cast<int>(hull[0].x), static_cast<int>(hull[0].y),
                      static_cast<int>(hull[1].x), static_cast<int>(hull[1].y));
  }
  int64_t ymin = hull[0].y, ymax = hull[0].y;
  for (const Point& p : hull) {
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  constexpr double kEps = 1e-9;
  for (int64_t y = ymin; y <= ymax; ++y) {
    double xl = INFINITY, xr = -INFINITY;
    for (size_t i = 0; i < hull.size(); ++i) {
      const Point a = hull[i];
      const Point b = hull[(i + 1) % hull.size()];
      if (a.y == b.y) {
        if (a.y == y) {
          xl = std::min({xl, static_cast<double>(a.x), static_cast<double>(b.x)});
          xr = std::max({xr, static_cast<double>(a.x), static_cast<double>(b.x)});
        }
        continue;
      }
      if (y < std::min(a.y, b.y) || y > std::max(a.y, b.y)) continue;
      const double x = a.x + static_cast<double>(y - a.y) * (b.x - a.x) / (b.y - a.y);
      xl = std::min(xl, x);
      xr = std::max(xr, x);
    }
    if (xl > xr) continue;
    for (auto x = static_cast<int64_t>(std::ceil(xl - kEps)); x <= std::floor(xr + kEps); ++x) {
      pixels.emplace_back(static_cast<int>(x), static_cast<int>(y));
    }
  }
  return pixels;
}

namespace {

void TintPixels(Image& img, const std::vector<std::pair<int, int>>& pixels, Rgb tint) {
  std::vector<bool> seen(static_cast<size_t>(img.width()) * img.height(), false);
  for (const auto& [x, y] : pixels) {
    if (!img.Contains(x, y)) continue;
    const size_t k = static_cast<size_t>(y) * img.width() + x;
    if (seen[k]) continue;
    seen[k] = true;
    img.Set(x, y, Blend(img.Get(x, y), tint));
  }
}

void DrawMarkings(Image& img, const MatchState& state, const RenderOptions& options) {
  const int w = img.width(), h = img.height();
  img.DrawLine(0, 0, w - 1, 0, palette::kMarking);
  img.DrawLine(0, h - 1, w - 1, h - 1, palette::kMarking);
  img.DrawLine(0, 0, 0, h - 1, palette::kMarking);
  img.DrawLine(w - 1, 0, w - 1, h - 1, palette::kMarking);
  img.DrawLine(w / 2, 0, w / 2, h - 1, palette::kMarking);
  // Goal mouths: a second marking column just inside each end line.
  const int top = static_cast<int>(CellCenter(state, {0, state.goal_lo}, options).y);
  const int bottom = static_cast<int>(CellCenter(state, {0, state.goal_hi}, options).y);
  img.DrawLine(1, top, 1, bottom, palette::kMarking);
  img.DrawLine(w - 2, top, w - 2, bottom, palette::kMarking);
}

void DrawFormationLines(Image& img, const MatchState& state, Team team,
                        const RenderOptions& options) {
  const Rgb color = team == Team::kHome ? palette::kHomeLine : palette::kAwayLine;
  for (Role role : {Role::kDefender, Role::kMidfielder, Role::kForward}) {
    std::vector<Cell> line;
    for (int id : state.Outfield(team)) {
      if (state.players[id].role == role) line.push_back(state.players[id].pos);
    }
    std::sort(line.begin(), line.end(),
              [](Cell a, Cell b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
    for (size_t k = 1; k < line.size(); ++k) {
      const Point a = CellCenter(state, line[k - 1], options);
      const Point b = CellCenter(state, line[k], options);
      img.DrawLine(static_cast<int>(a.x), static_cast<int>(a.y), static_cast<int>(b.x),
                   static_cast<int>(b.y), color);
    }
  }
}

}  // namespace

RenderedState Render(const MatchState& state, const RenderOptions& options, uint64_t seed) {
  Image img(options.width, options.height, palette::kPitch);
  if (options.draw_markings) DrawMarkings(img, state, options);
  if (options.draw_hulls) {
    TintPixels(img, HullPixels(TeamHull(state, Team::kHome, options)), palette::kHome);
    TintPixels(img, HullPixels(TeamHull(state, Team::kAway, options)), palette::kAway);
  }
  if (options.draw_formation_lines) {
    DrawFormationLines(img, state, Team::kHome, options);
    DrawFormationLines(img, state, Team::kAway, options);
  }
  if (options.draw_players) {
    for (const auto& p : state.players) {
      const Point c = CellCenter(state, p.pos, options);
      img.FillCircle(static_cast<int>(c.x), static_cast<int>(c.y), options.player_radius,
                     p.team == Team::kHome ? palette::kHome : palette::kAway);
    }
  }
  if (options.draw_ball) {
    const Point c = CellCenter(state, state.ball.pos, options);
    img.FillCircle(static_cast<int>(c.x), static_cast<int>(c.y), options.ball_radius,
                   palette::kBall);
  }
  return {std::move(img), state.t, seed};
}

namespace {

// Frame k is named after step k * name_scale.
std::vector<std::string> WriteFrames(std::span<const MatchState> states,
                                     const std::string& directory, int stride,
                                     const RenderOptions& options, uint64_t seed,
                                     int name_scale) {
  Require(stride >= 1, ErrorCode::kInput, "stride must be >= 1");
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  Require(!ec && fs::is_directory(directory), ErrorCode::kIo,
          "cannot use frame directory " + directory);
  std::vector<std::string> paths;
  std::vector<std::string> names;
  for (size_t t = 0; t < states.size(); t += stride) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06d.ppm", static_cast<int>(t) * name_scale);
    const std::string path = (fs::path(directory) / name).string();
    Render(states[t], options, seed).image.WritePpm(path);
    paths.push_back(path);
    names.emplace_back(name);
  }
  std::ofstream manifest(fs::path(directory) / "manifest.txt");
  Require(manifest.good(), ErrorCode::kIo, "cannot write manifest in " + directory);
  for (const auto& n : names) manifest << n << '\n';
  return paths;
}

}  // namespace

std::vector<std::string> ExportFrames(const football::EpisodeTrace& trace,
                                      const std::string& directory, int stride,
                                      const RenderOptions& options) {
  Require(stride >= 1, ErrorCode::kInput, "stride must be >= 1");
  std::vector<MatchState> states;
  for (int t = 0; t < trace.size(); t += stride) states.push_back(trace.StateAt(t));
  return WriteFrames(states, directory, 1, options, trace.seed, stride);
}

std::vector<std::string> ExportStateFrames(std::span<const MatchState> states,
                                           const std::string& directory, int stride,
                                           const RenderOptions& options, uint64_t seed) {
  return WriteFrames(states, directory, stride, options, seed, 1);
}

}  // namespace rewardlab::render
