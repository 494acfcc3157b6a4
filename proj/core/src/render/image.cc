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

#include "rewardlab/render/image.h"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include "rewardlab/common/error.h"

namespace rewardlab::render {

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
  Require(width > 0 && height > 0, ErrorCode::kConfig, "zero-size canvas");
  bytes_.resize(3 * static_cast<size_t>(width) * height);
  for (size_t i = 0; i < bytes_.size(); i += 3) {
    bytes_[i] = fill.r;
    bytes_[i + 1] = fill.g;
    bytes_[i + 2] = fill.b;
  }
}

Rgb Image::Get(int x, int y) const {
  const size_t i = 3 * (static_cast<size_t>(y) * width_ + x);
  return {bytes_.at(i), bytes_.at(i + 1), bytes_.at(i + 2)};
}

void Image::Set(int x, int y, Rgb c) {
  if (!Contains(x, y)) return;
  const size_t i = 3 * (static_cast<size_t>(y) * width_ + x);
  bytes_[i] = c.r;
  bytes_[i + 1] = c.g;
  bytes_[i + 2] = c.b;
}

std::vector<std::pair<int, int>> LinePixels(int x0, int y0, int x1, int y1) {
  std::vector<std::pair<int, int>> pixels;
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    pixels.emplace_back(x0, y0);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) { err += dy; x0 += sx; }
    if (e2 <= dx) { err += dx; y0 += sy; }
  }
  return pixels;
}

void Image::DrawLine(int x0, int y0, int x1, int y1, Rgb c) {
  for (const auto& [x, y] : LinePixels(x0, y0, x1, y1)) Set(x, y, c);
}

void Image::FillCircle(int cx, int cy, int radius, Rgb c) {
  // Midpoint circle; each octant pair fills a horizontal span.
  int x = radius, y = 0, err = 1 - radius;
  auto span = [&](int y_off, int half) {
    for (int i = cx - half; i <= cx + half; ++i) Set(i, cy + y_off, c);
  };
  while (x >= y) {
    span(y, x);
    span(-y, x);
    span(x, y);
    span(-x, y);
    ++y;
    if (err < 0) {
      err += 2 * y + 1;
    } else {
      --x;
      err += 2 * (y - x) + 1;
    }
  }
}

std::vector<uint8_t> Image::EncodePpm() const {
  const std::string header =
      "P6\n" + std::to_string(width_) + " " + std::to_string(height_) + "\n255\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), bytes_.begin(), bytes_.end());
  return out;
}

Image Image::DecodePpm(std::span<const uint8_t> data) {
  // Header tokens are separated by single whitespace characters; no comments.
  size_t pos = 0;
  auto token = [&]() {
    while (pos < data.size() && std::isspace(data[pos])) ++pos;
    std::string t;
    while (pos < data.size() && !std::isspace(data[pos])) t += static_cast<char>(data[pos++]);
    return t;
  };
  Require(token() == "P6", ErrorCode::kInput, "not a binary PPM (P6)");
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(token());
    h = std::stoi(token());
    maxval = std::stoi(token());
  } catch (const std::exception&) {
    Fail(ErrorCode::kInput, "malformed PPM header");
  }
  Require(maxval == 255, ErrorCode::kInput, "only 8-bit PPM is supported");
  Require(w > 0 && h > 0, ErrorCode::kInput, "PPM has zero size");
  ++pos;  // single whitespace after maxval
  const size_t n = 3 * static_cast<size_t>(w) * h;
  Require(data.size() >= pos + n, ErrorCode::kInput, "truncated PPM payload");
  Image img(w, h, {});
  std::copy(data.begin() + pos, data.begin() + pos + n, img.bytes_.begin());
  return img;
}

void Image::WritePpm(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  Require(out.good(), ErrorCode::kIo, "cannot write " + path);
  const auto data = EncodePpm();
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  Require(out.good(), ErrorCode::kIo, "write failed for " + path);
}

Image Image::ReadPpm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), ErrorCode::kIo, "cannot open " + path);
  const std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return DecodePpm(data);
}

}  // namespace rewardlab::render
