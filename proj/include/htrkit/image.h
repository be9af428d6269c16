// include/htrkit/image.h

// Copyright 2026 The htrkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HTRKIT_IMAGE_H_
#define HTRKIT_IMAGE_H_

#include <cstdint>
#include <span>
#include <vector>

namespace htrkit::imaging {

inline constexpr std::uint8_t kInk = 0;
inline constexpr std::uint8_t kBackground = 255;

// Single-channel 8-bit raster, row-major. 0 is black ink, 255 is white background.
class LineImage {
 public:
  // Throws htrkit::Error for non-positive sizes.
  LineImage(int width, int height, std::uint8_t fill = kBackground);
  // Throws htrkit::Error if pixels.size() != width * height.
  LineImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }

  std::uint8_t at(int x, int y) const {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint8_t& at(int x, int y) {
    return pixels_[static_cast<std::size_t>(y) * width_ + x];
  }
  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }
  std::span<const std::uint8_t> row(int y) const {
    return std::span<const std::uint8_t>(pixels_).subspan(
        static_cast<std::size_t>(y) * width_, width_);
  }

  bool operator==(const LineImage&) const = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

}  // namespace htrkit::imaging

#endif  // HTRKIT_IMAGE_H_
