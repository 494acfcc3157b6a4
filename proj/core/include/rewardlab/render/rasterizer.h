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

#ifndef REWARDLAB_RENDER_RASTERIZER_H_
#define REWARDLAB_RENDER_RASTERIZER_H_

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rewardlab/football/match_state.h"
#include "rewardlab/football/trace.h"
#include "rewardlab/render/geometry.h"
#include "rewardlab/render/image.h"

namespace rewardlab::render {

// Fixed palette. Hull fills tint whatever lies underneath with Blend().
namespace palette {
inline constexpr Rgb kPitch{34, 139, 34};
inline constexpr Rgb kMarking{255, 255, 255};
inline constexpr Rgb kHome{0, 0, 255};
inline constexpr Rgb kAway{255, 0, 0};
inline constexpr Rgb kBall{0, 0, 0};
inline constexpr Rgb kHomeLine{100, 149, 237};
inline constexpr Rgb kAwayLine{255, 160, 122};
}  // namespace palette

// Every RGB triple a default render can contain.
std::set<Rgb> DocumentedColors();

struct RenderOptions {
  int width = 210;
  int height = 136;
  int player_radius = 3;
  int ball_radius = 2;
  bool draw_markings = true;
  bool draw_hulls = true;
  bool draw_formation_lines = true;
  bool draw_players = true;
  bool draw_ball = true;
};

void to_json(nlohmann::json& j, const RenderOptions& o);
void from_json(const nlohmann::json& j, RenderOptions& o);

struct RenderedState {
  Image image;
  int clock = 0;
  uint64_t seed = 0;
  int width() const { return image.width(); }
  int height() const { return image.height(); }
  const std::vector<uint8_t>& bytes() const { return image.bytes(); }
};

// Pixel centre of a pitch cell: ((2x + 1) * width) / (2W), same for y.
Point CellCenter(const football::MatchState& state, football::Cell cell,
                 const RenderOptions& options);
// Cell whose pixel centre is nearest to a pixel (inverse of CellCenter).
football::Cell NearestCell(const football::MatchState& state, int px, int py,
                           const RenderOptions& options);

// Hull of a team's outfield players in pixel coordinates.
std::vector<Point> TeamHull(const football::MatchState& state, football::Team team,
                            const RenderOptions& options);

// Pixels covered by a hull: scanline fill with inclusive boundaries for
// three or more vertices, a 1-px Bresenham segment for two, one pixel for one.
std::vector<std::pair<int, int>> HullPixels(const std::vector<Point>& hull);

// Draw order: pitch, markings (border, halfway line, goal mouths), home hull
// tint, away hull tint, formation lines (players of one role sorted by row,
// joined in sequence; keepers excluded), player discs (keepers included),
// ball disc at its current cell. Throws kConfig for a zero-size canvas.
RenderedState Render(const football::MatchState& state, const RenderOptions& options = {},
                     uint64_t seed = 0);

// Writes frame_NNNNNN.ppm for steps 0, stride, 2*stride, ... (the state at
// the start of each step) and a manifest.txt listing the file names in order.
// Returns the frame paths. Throws kIo if the directory is unusable.
std::vector<std::string> ExportFrames(const football::EpisodeTrace& trace,
                                      const std::string& directory, int stride = 1,
                                      const RenderOptions& options = {});

// Same layout for an arbitrary state sequence.
std::vector<std::string> ExportStateFrames(std::span<const football::MatchState> states,
                                           const std::string& directory, int stride = 1,
                                           const RenderOptions& options = {},
                                           uint64_t seed = 0);

}  // namespace rewardlab::render

#endif  // REWARDLAB_RENDER_RASTERIZER_H_
