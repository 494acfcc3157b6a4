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

#ifndef REWARDLAB_RENDER_IMAGE_H_
#define REWARDLAB_RENDER_IMAGE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rewardlab::render {

struct Rgb {
  uint8_t r = 0;
  uint8_t g = 0;
  uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
  friend auto operator<=>(const Rgb&, const Rgb&) = default;
};

// 3/4 base + 1/4 tint per channel, integer arithmetic.
inline Rgb Blend(Rgb base, Rgb tint) {
  return {static_cast<uint8_t>((3 * base.r + tint.r) / 4),
          static_cast<uint8_t>((3 * base.g + tint.g) / 4),
          static_cast<uint8_t>((3 * base.b + tint.b) / 4)};
}

// Row-major RGB8 buffer.
class Image {
 public:
  Image() = default;
  // Throws Error(kConfig) on a zero-sized canvas.
  Image(int width, int height, Rgb fill);

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<uint8_t>& bytes() const { return bytes_; }

  bool Contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  Rgb Get(int x, int y) const;
  void Set(int x, int y, Rgb c);  // ignores out-of-canvas pixels

  // Bresenham segment, endpoints included.
  void DrawLine(int x0, int y0, int x1, int y1, Rgb c);
  // Filled midpoint circle.
  void FillCircle(int cx, int cy, int radius, Rgb c);

  // Binary PPM: "P6\n<w> <h>\n255\n" followed by the raw bytes.
  std::vector<uint8_t> EncodePpm() const;
  static Image DecodePpm(std::span<const uint8_t> data);  // throws kInput
  void WritePpm(const std::string& path) const;            // throws kIo
  static Image ReadPpm(const std::string& path);

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> bytes_;
};

// Pixels of a Bresenham segment, endpoints included.
std::vector<std::pair<int, int>> LinePixels(int x0, int y0, int x1, int y1);

}  // namespace rewardlab::render

#endif  // REWARDLAB_RENDER_IMAGE_H_
