// include/htrkit/image_io.h

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

#ifndef HTRKIT_IMAGE_IO_H_
#define HTRKIT_IMAGE_IO_H_

#include <string>

#include "htrkit/image.h"

namespace htrkit::imaging {

// Reads PNG or JPEG (detected by signature); color input is converted to
// luminance. Throws htrkit::Error on I/O or decode failure.
LineImage ReadImage(const std::string& path);

// Writes an 8-bit grayscale PNG. Output bytes depend only on the pixels.
void WritePng(const std::string& path, const LineImage& image);

}  // namespace htrkit::imaging

#endif  // HTRKIT_IMAGE_IO_H_
