// include/htrkit/augment.h

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

#ifndef HTRKIT_AUGMENT_H_
#define HTRKIT_AUGMENT_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "htrkit/image.h"
#include "htrkit/random.h"

namespace htrkit::augment {

using imaging::LineImage;

enum class Kind {
  kNone,
  kRandomRotation,
  kGaussianBlur,
  kDilation,
  kErosion,
  kResize,
  kUnderline,
  kElastic,
  kRandomAffine,
  kRandomPerspective,
  kReResize,
};

std::string_view KindName(Kind kind);
// Throws htrkit::Error for names outside the eleven kinds.
Kind ParseKind(std::string_view name);
const std::array<Kind, 11>& AllKinds();

struct Range {
  double lo = 0;
  double hi = 0;
};
struct IntRange {
  int lo = 0;
  int hi = 0;
};

// Parameter records. Defaults are the drawn ranges; Validate() enforces the
// hard bounds listed next to each field.

struct NoParams {};

struct RotationParams {
  Range degrees{-2.0, 2.0};  // within [-45, 45]
};

struct BlurParams {
  Range sigma{0.5, 1.5};  // within [0, 10]; sigma 0 is the identity
};

enum class Element { kSquare, kCross };

struct MorphParams {
  IntRange size{2, 3};  // within [1, 7]
  Element element = Element::kSquare;
};

struct ResizeParams {
  Range factor{0.5, 0.9};  // within [0.1, 1]
};

struct ReResizeParams {
  Range factor{0.5, 0.9};  // within [0.1, 1]
  IntRange cycles{2, 3};   // within [1, 5]
};

struct UnderlineParams {
  IntRange thickness{1, 3};     // within [1, 10]
  double band_fraction = 0.15;  // within (0, 1]
};

struct ElasticParams {
  Range alpha{20.0, 40.0};  // within [0, 200]
  Range sigma{4.0, 6.0};    // within [0.5, 50]
};

struct AffineParams {
  Range shear_degrees{-5.0, 5.0};  // within [-30, 30]
  Range scale{0.9, 1.1};           // within [0.5, 2]
};

struct PerspectiveParams {
  double distortion = 0.075;  // within [0, 0.5]
};

using Params =
    std::variant<NoParams, RotationParams, BlurParams, MorphParams,
                 ResizeParams, ReResizeParams, UnderlineParams, ElasticParams,
                 AffineParams, PerspectiveParams>;

struct AugmentationSpec {
  Kind kind = Kind::kNone;
  Params params;
  double apply_probability = 0.5;

  // Spec for `kind` with its default parameter ranges.
  static AugmentationSpec Default(Kind kind);
};

// Throws htrkit::Error when params do not match the kind, a range is empty
// or leaves its bound, or apply_probability is outside [0, 1].
void Validate(const AugmentationSpec& spec);

struct AugmentSeed {
  std::uint64_t global_seed = 0;
  std::string line_id;
  std::int64_t epoch = 0;

  // Stable 64-bit hash of all three fields.
  std::uint64_t StreamSeed() const;
};

struct AugmentResult {
  LineImage image;
  bool applied = false;
  std::string warning;
};

// The first draw of the seeded stream decides application; when applied, the
// transform draws its parameters from the same stream. Labels never pass
// through here.
AugmentResult Apply(const AugmentationSpec& spec, const LineImage& image,
                    const AugmentSeed& seed);

// Runs the transform unconditionally with parameters drawn from `stream`.
LineImage Transform(const AugmentationSpec& spec, const LineImage& image,
                    SeededStream& stream, std::string* warning = nullptr);

// ---- primitives ----

struct DisplacementField {
  int width = 0;
  int height = 0;
  std::vector<double> dx;
  std::vector<double> dy;

  DisplacementField(int w, int h)
      : width(w), height(h),
        dx(static_cast<std::size_t>(w) * h, 0.0),
        dy(static_cast<std::size_t>(w) * h, 0.0) {}
};

// alpha * GaussianSmooth(U(-1, 1), sigma) per axis. Throws for alpha < 0 or
// sigma <= 0.
DisplacementField ElasticField(int width, int height, double alpha,
                               double sigma, SeededStream& stream);

// Row-major 3x3 matrix mapping output pixel coordinates to source ones.
using Homography = std::array<double, 9>;
inline constexpr Homography kIdentityHomography = {1, 0, 0, 0, 1, 0, 0, 0, 1};

DisplacementField HomographyField(int width, int height, const Homography& h);

// Homography taking each `from[i]` to `to[i]`. Throws for degenerate input.
Homography SolveHomography(const std::array<std::pair<double, double>, 4>& from,
                           const std::array<std::pair<double, double>, 4>& to);

// out(x, y) = in(x + dx, y + dy), bilinear; samples outside read as 255.
// Throws htrkit::Error if the field size differs from the image.
LineImage Warp(const LineImage& image, const DisplacementField& field);

LineImage Rotate(const LineImage& image, double degrees);
LineImage ShearScale(const LineImage& image, double shear_degrees, double scale);
// Each corner moves inward by (fx * distortion * width, fy * distortion *
// height) where fx, fy in [0, 1] are given per corner (TL, TR, BR, BL).
LineImage Perspective(const LineImage& image, double distortion,
                      const std::array<std::pair<double, double>, 4>& corner_draws);
LineImage GaussianBlur(const LineImage& image, double sigma);

struct StructuringElement {
  std::vector<std::pair<int, int>> offsets;  // (dx, dy)
  // size x size square or plus-shaped cross anchored at (size / 2, size / 2).
  static StructuringElement Make(int size, Element element);
};

// Ink (dark) grows: out(p) = min over b of in(p - b). Outside pixels ignored.
LineImage Dilate(const LineImage& image, const StructuringElement& se);
// Ink shrinks: out(p) = max over b of in(p + b). Outside pixels ignored.
LineImage Erode(const LineImage& image, const StructuringElement& se);

// Downscale by `factor` then bilinear back to the original size.
LineImage ResizeCycle(const LineImage& image, double factor);

// Rows [y, y + thickness) in columns [x0, x1) set to ink, clipped to the image.
LineImage DrawUnderline(const LineImage& image, int y, int thickness, int x0,
                        int x1);

}  // namespace htrkit::augment

#endif  // HTRKIT_AUGMENT_H_
