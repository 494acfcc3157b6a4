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

#include <filesystem>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "oracles.h"
#include "random_states.h"
#include "rewardlab/common/error.h"
#include "rewardlab/football/trace.h"
#include "rewardlab/render/geometry.h"
#include "rewardlab/render/image.h"
#include "rewardlab/render/rasterizer.h"

namespace rewardlab::render {
namespace {

namespace fs = std::filesystem;
using football::EnvConfig;
using football::Team;

std::vector<Point> RandomPoints(Rng& rng, int n, int range) {
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = static_cast<int64_t>(rng.UniformInt(range));
    p.y = static_cast<int64_t>(rng.UniformInt(range));
  }
  return pts;
}

TEST(GeometryTest, HullMatchesBruteForce) {
  Rng rng(1);
  for (int i = 0; i < 300; ++i) {
    const auto pts = RandomPoints(rng, 1 + static_cast<int>(rng.UniformInt(12)),
                                  2 + static_cast<int>(rng.UniformInt(20)));
    const auto hull = ConvexHull(pts);
    EXPECT_EQ(std::set<Point>(hull.begin(), hull.end()), oracle::BruteForceHull(pts));
  }
}

TEST(GeometryTest, DegenerateHulls) {
  EXPECT_EQ(ConvexHull({{3, 3}, {3, 3}}).size(), 1u);
  const auto line = ConvexHull({{0, 0}, {2, 2}, {1, 1}, {4, 4}});
  ASSERT_EQ(line.size(), 2u);
  EXPECT_EQ(std::set<Point>(line.begin(), line.end()), (std::set<Point>{{0, 0}, {4, 4}}));
  EXPECT_THROW(ConvexHull({}), Error);
}

TEST(GeometryTest, HullIsCounterClockwise) {
  const auto hull = ConvexHull({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {2, 2}});
  ASSERT_EQ(hull.size(), 4u);
  for (size_t i = 0; i < hull.size(); ++i) {
    EXPECT_GT(Cross(hull[i], hull[(i + 1) % 4], hull[(i + 2) % 4]), 0);
  }
}

TEST(GeometryTest, ContainmentAgreesWithHalfPlanes) {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto hull = ConvexHull(RandomPoints(rng, 1 + static_cast<int>(rng.UniformInt(8)), 15));
    for (int x = -1; x <= 16; ++x) {
      for (int y = -1; y <= 16; ++y) {
        ASSERT_EQ(InConvexPolygon(hull, {x, y}), oracle::InsideByHalfPlanes(hull, {x, y}));
      }
    }
  }
}

TEST(GeometryTest, HullPixelsAreExactlyTheInsidePixels) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto hull = ConvexHull(RandomPoints(rng, 3 + static_cast<int>(rng.UniformInt(6)), 40));
    if (hull.size() < 3) continue;
    const auto px = HullPixels(hull);
    std::set<std::pair<int, int>> got(px.begin(), px.end());
    std::set<std::pair<int, int>> want;
    for (int x = 0; x < 40; ++x) {
      for (int y = 0; y < 40; ++y) {
        if (oracle::InsideByHalfPlanes(hull, {x, y})) want.insert({x, y});
      }
    }
    EXPECT_EQ(got, want);
  }
}

TEST(ImageTest, PpmRoundTrip) {
  Image img(5, 3, {1, 2, 3});
  img.Set(4, 2, {200, 100, 50});
  const auto bytes = img.EncodePpm();
  const std::string head(bytes.begin(), bytes.begin() + 11);
  EXPECT_EQ(head, "P6\n5 3\n255\n");
  const Image back = Image::DecodePpm(bytes);
  EXPECT_EQ(back.bytes(), img.bytes());
  EXPECT_EQ(back.Get(4, 2), (Rgb{200, 100, 50}));
  std::vector<uint8_t> bad = {'P', '3'};
  EXPECT_THROW(Image::DecodePpm(bad), Error);
}

TEST(ImageTest, LineAndCircle) {
  const auto line = LinePixels(0, 0, 4, 2);
  EXPECT_EQ(line.front(), (std::pair<int, int>{0, 0}));
  EXPECT_EQ(line.back(), (std::pair<int, int>{4, 2}));
  EXPECT_EQ(line.size(), 5u);
  Image img(11, 11, {0, 0, 0});
  img.FillCircle(5, 5, 3, {9, 9, 9});
  EXPECT_EQ(img.Get(5, 5), (Rgb{9, 9, 9}));
  EXPECT_EQ(img.Get(8, 5), (Rgb{9, 9, 9}));
  EXPECT_EQ(img.Get(8, 8), (Rgb{0, 0, 0}));
  img.Set(-1, 50, {1, 1, 1});  // ignored
  EXPECT_THROW(Image(0, 3, {}), Error);
}

TEST(ImageTest, BlendIsQuarterTint) {
  EXPECT_EQ(Blend({100, 100, 100}, {0, 0, 200}), (Rgb{75, 75, 125}));
}

TEST(RasterizerTest, ReRenderIsByteIdentical) {
  Rng rng(4);
  const EnvConfig c;
  for (int i = 0; i < 20; ++i) {
    const auto s = testing::RandomState(c, rng);
    EXPECT_EQ(Render(s).bytes(), Render(s).bytes());
  }
}

TEST(RasterizerTest, OnlyDocumentedColours) {
  Rng rng(5);
  const auto allowed = DocumentedColors();
  for (int i = 0; i < 20; ++i) {
    const auto r = Render(testing::RandomState(EnvConfig{}, rng));
    const auto& b = r.bytes();
    for (size_t k = 0; k < b.size(); k += 3) {
      ASSERT_TRUE(allowed.count(Rgb{b[k], b[k + 1], b[k + 2]}))
          << int(b[k]) << "," << int(b[k + 1]) << "," << int(b[k + 2]);
    }
  }
}

TEST(RasterizerTest, HullContainsTeamCentres) {
  Rng rng(6);
  const EnvConfig c;
  const RenderOptions o;
  for (int i = 0; i < 200; ++i) {
    const auto s = testing::RandomState(c, rng);
    for (Team team : {Team::kHome, Team::kAway}) {
      const auto hull = TeamHull(s, team, o);
      for (int id : s.Outfield(team)) {
        EXPECT_TRUE(InConvexPolygon(hull, CellCenter(s, s.players[id].pos, o)));
      }
    }
  }
}

TEST(RasterizerTest, NearestCellInvertsCellCenter) {
  const auto s = football::KickoffState(EnvConfig{}, 1);
  const RenderOptions o;
  for (int x = 0; x < s.width; ++x) {
    for (int y = 0; y < s.height; ++y) {
      const Point p = CellCenter(s, {x, y}, o);
      EXPECT_EQ(NearestCell(s, static_cast<int>(p.x), static_cast<int>(p.y), o),
                (football::Cell{x, y}));
    }
  }
}

TEST(RasterizerTest, BallPixelIsBlack) {
  Rng rng(7);
  const RenderOptions o;
  const auto s = testing::RandomState(EnvConfig{}, rng);
  const auto r = Render(s, o);
  const Point p = CellCenter(s, s.ball.pos, o);
  EXPECT_EQ(r.image.Get(static_cast<int>(p.x), static_cast<int>(p.y)), palette::kBall);
}

TEST(RasterizerTest, LayersCanBeDisabled) {
  RenderOptions o;
  o.draw_markings = o.draw_hulls = o.draw_formation_lines = o.draw_players = o.draw_ball = false;
  const auto r = Render(football::KickoffState(EnvConfig{}, 1), o);
  for (int x = 0; x < r.width(); ++x) {
    for (int y = 0; y < r.height(); ++y) ASSERT_EQ(r.image.Get(x, y), palette::kPitch);
  }
  o.width = 0;
  EXPECT_THROW(Render(football::KickoffState(EnvConfig{}, 1), o), Error);
}

TEST(RasterizerTest, ExportFramesWritesManifest) {
  const auto trace = football::RunEpisode(EnvConfig{}, 2, [](const football::FootballEnv& env) {
    return std::vector<int>(env.num_agents(), football::kIdle);
  });
  const fs::path dir = fs::temp_directory_path() / "rewardlab_frames_test";
  fs::remove_all(dir);
  const auto files = ExportFrames(trace, dir.string(), 50);
  EXPECT_EQ(static_cast<int>(files.size()), (trace.size() + 49) / 50);
  std::ifstream manifest(dir / "manifest.txt");
  std::string line;
  int lines = 0;
  while (std::getline(manifest, line)) ++lines;
  EXPECT_EQ(lines, static_cast<int>(files.size()));
  EXPECT_EQ(Image::ReadPpm(files[0]).bytes(), Render(trace.StateAt(0)).bytes());
  fs::remove_all(dir);
  std::ofstream(dir.string()) << "x";  // a file where the directory should go
  try {
    ExportFrames(trace, (dir / "sub").string(), 50);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  fs::remove(dir);
}

}  // namespace
}  // namespace rewardlab::render
