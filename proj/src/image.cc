// src/image.cc

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

#include "htrkit/image.h"

#include <string>

#include "htrkit/error.h"

namespace htrkit::imaging {

LineImage::LineImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1)
    throw Error("image dimensions must be positive, got " +
                std::to_string(width) + "x" + std::to_string(height));
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

LineImage::LineImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 1 || height < 1)
    throw Error("image dimensions must be positive, got " +
                std::to_string(width) + "x" + std::to_string(height));
  if (pixels_.size() != static_cast<std::size_t>(width) * height)
    throw Error("pixel buffer size does not match " + std::to_string(width) +
                "x" + std::to_string(height));
}

}  // namespace htrkit::imaging
