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

#ifndef REWARDLAB_RENDER_GEOMETRY_H_
#define REWARDLAB_RENDER_GEOMETRY_H_

#include <cstdint>
#include <vector>

namespace rewardlab::render {

struct Point {
  int64_t x = 0;
  int64_t y = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

// Twice the signed area of (o, a, b); positive for a counterclockwise turn.
inline int64_t Cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain. Returns hull vertices counterclockwise (in a
// y-up frame) starting from the lexicographically smallest point; duplicates
// and collinear boundary points are dropped. A set of collinear points
// yields its two extreme points, a single distinct point yields itself.
// Throws Error(kInput) on empty input.
std::vector<Point> ConvexHull(std::vector<Point> points);

// Inside-or-on test for a hull as returned by ConvexHull (any vertex count).
bool InConvexPolygon(const std::vector<Point>& hull, Point p);

}  // namespace rewardlab::render

#endif  // REWARDLAB_RENDER_GEOMETRY_H_
