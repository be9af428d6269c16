// include/htrkit/imaging.h

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

#ifndef HTRKIT_IMAGING_H_
#define HTRKIT_IMAGING_H_

#include <cstdint>
#include <optional>

#include "htrkit/image.h"
#include "htrkit/pagexml.h"

namespace htrkit::imaging {

using pagexml::Rect;

struct PreprocessConfig {
  int target_height = 384;
  // Right-pad (or proportionally cap) content to this width. nullopt keeps
  // the natural scaled width.
  std::optional<int> max_width = 384;
  bool binarize = true;
  std::uint8_t pad_value = kBackground;
};

// Copies the pixels of `rect`. Throws htrkit::Error unless the rectangle has
// positive area and lies inside the image.
LineImage Crop(const LineImage& image, const Rect& rect);

// Global threshold maximizing between-class variance over the classes
// {v <= t} and {v > t}. Smallest maximizing t wins. nullopt when every
// split has zero variance (single-intensity image).
std::optional<int> OtsuThreshold(const LineImage& image);

// Pixels <= threshold become ink (0), the rest background (255).
// Single-intensity images map to all background.
LineImage Binarize(const LineImage& image);

// Rescales intensities so the mean of the lighter Otsu class (the background)
// lands on 255. Single-intensity images become all background.
LineImage NormalizeBackground(const LineImage& image);

// Bilinear resampling (pixel-center aligned) to an exact size.
LineImage ResizeBilinear(const LineImage& image, int width, int height);

// Scales to `target_height` keeping aspect ratio, then right-pads with
// `pad_value` to `max_width`. Content wider than `max_width` is scaled down
// to fit and centred vertically within `target_height`.
LineImage ResizeToHeight(const LineImage& image, int target_height,
                         std::optional<int> max_width,
                         std::uint8_t pad_value = kBackground);

// binarize (optional) -> normalize background -> resize/pad.
LineImage Preprocess(const LineImage& image, const PreprocessConfig& config);

void Validate(const PreprocessConfig& config);

}  // namespace htrkit::imaging

#endif  // HTRKIT_IMAGING_H_
