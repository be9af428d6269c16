// src/imaging.cc

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

#include "htrkit/imaging.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "htrkit/error.h"

namespace htrkit::imaging {

namespace {

std::uint8_t ClampToByte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

std::array<std::uint64_t, 256> Histogram(const LineImage& image) {
  std::array<std::uint64_t, 256> hist{};
  for (std::uint8_t v : image.pixels()) ++hist[v];
  return hist;
}

// Source coordinate of destination pixel `i` when mapping `src` samples onto
// `dst` samples with pixel centres aligned.
double SourceCoord(int i, int src, int dst) {
  const double s = (i + 0.5) * static_cast<double>(src) / dst - 0.5;
  return std::clamp(s, 0.0, static_cast<double>(src - 1));
}

}  // namespace

void Validate(const PreprocessConfig& config) {
  if (config.target_height <= 0)
    throw Error("target_height must be positive");
  if (config.max_width && *config.max_width <= 0)
    throw Error("max_width must be positive");
}

LineImage Crop(const LineImage& image, const Rect& rect) {
  if (rect.x1 <= rect.x0 || rect.y1 <= rect.y0)
    throw Error("crop rectangle has no area");
  if (rect.x0 < 0 || rect.y0 < 0 || rect.x1 > image.width() ||
      rect.y1 > image.height())
    throw Error("crop rectangle (" + std::to_string(rect.x0) + "," +
                std::to_string(rect.y0) + "," + std::to_string(rect.x1) + "," +
                std::to_string(rect.y1) + ") outside " +
                std::to_string(image.width()) + "x" +
                std::to_string(image.height()) + " image");
  LineImage out(rect.width(), rect.height());
  for (int y = 0; y < out.height(); ++y) {
    const auto src = image.row(rect.y0 + y).subspan(rect.x0, rect.width());
    std::copy(src.begin(), src.end(),
              out.pixels().begin() + static_cast<std::ptrdiff_t>(y) * out.width());
  }
  return out;
}

std::optional<int> OtsuThreshold(const LineImage& image) {
  const auto hist = Histogram(image);
  const double total = static_cast<double>(image.size());
  double sum_all = 0;
  for (int v = 0; v < 256; ++v) sum_all += static_cast<double>(v) * hist[v];

  double n0 = 0, sum0 = 0;
  double best = 0;
  std::optional<int> best_t;
  for (int t = 0; t < 255; ++t) {
    n0 += static_cast<double>(hist[t]);
    sum0 += static_cast<double>(t) * hist[t];
    const double n1 = total - n0;
    if (n0 == 0 || n1 == 0) continue;
    const double diff = sum0 / n0 - (sum_all - sum0) / n1;
    const double between = n0 * n1 * diff * diff;
    if (between > best) {
      best = between;
      best_t = t;
    }
  }
  return best_t;
}

LineImage Binarize(const LineImage& image) {
  const std::optional<int> t = OtsuThreshold(image);
  LineImage out(image.width(), image.height(), kBackground);
  if (!t) return out;
  auto dst = out.pixels();
  const auto src = image.pixels();
  for (std::size_t i = 0; i < src.size(); ++i)
    dst[i] = src[i] <= *t ? kInk : kBackground;
  return out;
}

LineImage NormalizeBackground(const LineImage& image) {
  const auto hist = Histogram(image);
  const std::optional<int> t = OtsuThreshold(image);
  double dark_n = 0, dark_sum = 0, light_n = 0, light_sum = 0;
  for (int v = 0; v < 256; ++v) {
    const double n = static_cast<double>(hist[v]);
    if (t && v <= *t) {
      dark_n += n;
      dark_sum += n * v;
    } else {
      light_n += n;
      light_sum += n * v;
    }
  }
  // The lighter class is background. Without a split, everything is.
  const double background = light_n > 0 ? light_sum / light_n : dark_sum / dark_n;
  if (background < 1.0) return LineImage(image.width(), image.height());
  const double gain = 255.0 / background;
  LineImage out = image;
  for (std::uint8_t& v : out.pixels()) v = ClampToByte(v * gain);
  return out;
}

LineImage ResizeBilinear(const LineImage& image, int width, int height) {
  if (width == image.width() && height == image.height()) return image;
  LineImage out(width, height);
  std::vector<int> x0(width), x1(width);
  std::vector<double> fx(width);
  for (int x = 0; x < width; ++x) {
    const double sx = SourceCoord(x, image.width(), width);
    x0[x] = static_cast<int>(std::floor(sx));
    x1[x] = std::min(x0[x] + 1, image.width() - 1);
    fx[x] = sx - x0[x];
  }
  for (int y = 0; y < height; ++y) {
    const double sy = SourceCoord(y, image.height(), height);
    const int y0 = static_cast<int>(std::floor(sy));
    const int y1 = std::min(y0 + 1, image.height() - 1);
    const double fy = sy - y0;
    for (int x = 0; x < width; ++x) {
      const double top =
          image.at(x0[x], y0) * (1 - fx[x]) + image.at(x1[x], y0) * fx[x];
      const double bottom =
          image.at(x0[x], y1) * (1 - fx[x]) + image.at(x1[x], y1) * fx[x];
      out.at(x, y) = ClampToByte(top * (1 - fy) + bottom * fy);
    }
  }
  return out;
}

LineImage ResizeToHeight(const LineImage& image, int target_height,
                         std::optional<int> max_width,
                         std::uint8_t pad_value) {
  if (target_height <= 0) throw Error("target_height must be positive");
  if (max_width && *max_width <= 0) throw Error("max_width must be positive");
  const double scale = static_cast<double>(target_height) / image.height();
  int content_w = std::max(1, static_cast<int>(std::lround(image.width() * scale)));
  int content_h = target_height;
  if (max_width && content_w > *max_width) {
    const double capped = static_cast<double>(*max_width) / image.width();
    content_w = *max_width;
    content_h = std::clamp(static_cast<int>(std::lround(image.height() * capped)),
                           1, target_height);
  }
  const LineImage content = ResizeBilinear(image, content_w, content_h);
  const int out_w = max_width ? *max_width : content_w;
  if (out_w == content_w && content_h == target_height) return content;

  LineImage out(out_w, target_height, pad_value);
  const int top = (target_height - content_h) / 2;
  for (int y = 0; y < content_h; ++y)
    for (int x = 0; x < content_w; ++x) out.at(x, top + y) = content.at(x, y);
  return out;
}

LineImage Preprocess(const LineImage& image, const PreprocessConfig& config) {
  Validate(config);
  LineImage out = config.binarize ? Binarize(image) : image;
  out = NormalizeBackground(out);
  return ResizeToHeight(out, config.target_height, config.max_width,
                        config.pad_value);
}

}  // namespace htrkit::imaging
