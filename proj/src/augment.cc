// src/augment.cc

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

#include "htrkit/augment.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "htrkit/error.h"
#include "htrkit/imaging.h"

namespace htrkit::augment {

namespace {

constexpr std::array<std::pair<Kind, std::string_view>, 11> kNames = {{
    {Kind::kNone, "None"},
    {Kind::kRandomRotation, "RandomRotation"},
    {Kind::kGaussianBlur, "GaussianBlur"},
    {Kind::kDilation, "Dilation"},
    {Kind::kErosion, "Erosion"},
    {Kind::kResize, "Resize"},
    {Kind::kUnderline, "Underline"},
    {Kind::kElastic, "Elastic"},
    {Kind::kRandomAffine, "RandomAffine"},
    {Kind::kRandomPerspective, "RandomPerspective"},
    {Kind::kReResize, "ReResize"},
}};

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kBackgroundValue = imaging::kBackground;

std::uint8_t ClampToByte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

void CheckRange(const Range& r, double lo, double hi, const char* what) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi)
    throw Error(std::string(what) + ": range must be finite and lo <= hi");
  if (r.lo < lo || r.hi > hi)
    throw Error(std::string(what) + ": range must lie within [" +
                std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

void CheckRange(const IntRange& r, int lo, int hi, const char* what) {
  if (r.lo > r.hi) throw Error(std::string(what) + ": range must have lo <= hi");
  if (r.lo < lo || r.hi > hi)
    throw Error(std::string(what) + ": range must lie within [" +
                std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

template <typename P>
const P& ParamsAs(const AugmentationSpec& spec) {
  const P* p = std::get_if<P>(&spec.params);
  if (p == nullptr)
    throw Error("parameters do not match augmentation kind " +
                std::string(KindName(spec.kind)));
  return *p;
}

std::vector<double> GaussianKernel(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(4.0 * sigma)));
  std::vector<double> k(2 * radius + 1);
  double sum = 0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable convolution with clamp-to-edge borders, in place.
void SmoothPlane(std::vector<double>& plane, int width, int height,
                 const std::vector<double>& kernel) {
  const int radius = static_cast<int>(kernel.size() / 2);
  std::vector<double> tmp(plane.size());
  for (int y = 0; y < height; ++y) {
    const double* row = plane.data() + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      double acc = 0;
      for (int k = -radius; k <= radius; ++k)
        acc += kernel[k + radius] * row[std::clamp(x + k, 0, width - 1)];
      tmp[static_cast<std::size_t>(y) * width + x] = acc;
    }
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0;
      for (int k = -radius; k <= radius; ++k)
        acc += kernel[k + radius] *
               tmp[static_cast<std::size_t>(std::clamp(y + k, 0, height - 1)) *
                       width + x];
      plane[static_cast<std::size_t>(y) * width + x] = acc;
    }
  }
}

double SampleBilinear(const LineImage& image, double sx, double sy) {
  const double fx0 = std::floor(sx);
  const double fy0 = std::floor(sy);
  if (fx0 < -1 || fy0 < -1 || fx0 > image.width() || fy0 > image.height())
    return kBackgroundValue;
  const int x0 = static_cast<int>(fx0);
  const int y0 = static_cast<int>(fy0);
  const double fx = sx - fx0;
  const double fy = sy - fy0;
  auto px = [&](int x, int y) -> double {
    return image.contains(x, y) ? image.at(x, y) : kBackgroundValue;
  };
  const double top = px(x0, y0) * (1 - fx) + px(x0 + 1, y0) * fx;
  const double bottom = px(x0, y0 + 1) * (1 - fx) + px(x0 + 1, y0 + 1) * fx;
  return top * (1 - fy) + bottom * fy;
}

LineImage Morph(const LineImage& image, const StructuringElement& se,
                bool dilate) {
  LineImage out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      int best = dilate ? 255 : 0;
      for (const auto& [dx, dy] : se.offsets) {
        const int sx = dilate ? x - dx : x + dx;
        const int sy = dilate ? y - dy : y + dy;
        if (!image.contains(sx, sy)) continue;
        const int v = image.at(sx, sy);
        best = dilate ? std::min(best, v) : std::max(best, v);
      }
      out.at(x, y) = static_cast<std::uint8_t>(best);
    }
  }
  return out;
}

LineImage RandomUnderline(const LineImage& image, const UnderlineParams& p,
                          SeededStream& stream, std::string* warning) {
  if (image.height() < 8) {
    if (warning) *warning = "image shorter than 8 px, underline skipped";
    return image;
  }
  int x0 = image.width(), x1 = -1, y0 = image.height(), y1 = -1;
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x)
      if (image.at(x, y) < 128) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
  if (x1 < 0) {
    x0 = 0;
    x1 = image.width() - 1;
    y0 = 0;
    y1 = image.height() - 1;
  }
  const int ink_height = y1 - y0 + 1;
  const int band = std::max(
      1, static_cast<int>(std::ceil(p.band_fraction * ink_height)));
  const int thickness =
      static_cast<int>(stream.UniformInt(p.thickness.lo, p.thickness.hi));
  const int y = static_cast<int>(stream.UniformInt(y1 - band + 1, y1));
  return DrawUnderline(image, y, thickness, x0, x1 + 1);
}

}  // namespace

std::string_view KindName(Kind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  throw Error("unknown augmentation kind");
}

Kind ParseKind(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  throw Error("unknown augmentation kind '" + std::string(name) + "'");
}

const std::array<Kind, 11>& AllKinds() {
  static const std::array<Kind, 11> kinds = [] {
    std::array<Kind, 11> out{};
    for (std::size_t i = 0; i < kNames.size(); ++i) out[i] = kNames[i].first;
    return out;
  }();
  return kinds;
}

AugmentationSpec AugmentationSpec::Default(Kind kind) {
  AugmentationSpec spec;
  spec.kind = kind;
  switch (kind) {
    case Kind::kNone: spec.params = NoParams{}; break;
    case Kind::kRandomRotation: spec.params = RotationParams{}; break;
    case Kind::kGaussianBlur: spec.params = BlurParams{}; break;
    case Kind::kDilation:
    case Kind::kErosion: spec.params = MorphParams{}; break;
    case Kind::kResize: spec.params = ResizeParams{}; break;
    case Kind::kReResize: spec.params = ReResizeParams{}; break;
    case Kind::kUnderline: spec.params = UnderlineParams{}; break;
    case Kind::kElastic: spec.params = ElasticParams{}; break;
    case Kind::kRandomAffine: spec.params = AffineParams{}; break;
    case Kind::kRandomPerspective: spec.params = PerspectiveParams{}; break;
  }
  return spec;
}

void Validate(const AugmentationSpec& spec) {
  if (!(spec.apply_probability >= 0.0 && spec.apply_probability <= 1.0))
    throw Error("apply_probability must lie in [0, 1]");
  switch (spec.kind) {
    case Kind::kNone:
      ParamsAs<NoParams>(spec);
      break;
    case Kind::kRandomRotation:
      CheckRange(ParamsAs<RotationParams>(spec).degrees, -45, 45, "degrees");
      break;
    case Kind::kGaussianBlur:
      CheckRange(ParamsAs<BlurParams>(spec).sigma, 0, 10, "sigma");
      break;
    case Kind::kDilation:
    case Kind::kErosion:
      CheckRange(ParamsAs<MorphParams>(spec).size, 1, 7, "size");
      break;
    case Kind::kResize:
      CheckRange(ParamsAs<ResizeParams>(spec).factor, 0.1, 1.0, "factor");
      break;
    case Kind::kReResize: {
      const auto& p = ParamsAs<ReResizeParams>(spec);
      CheckRange(p.factor, 0.1, 1.0, "factor");
      CheckRange(p.cycles, 1, 5, "cycles");
      break;
    }
    case Kind::kUnderline: {
      const auto& p = ParamsAs<UnderlineParams>(spec);
      CheckRange(p.thickness, 1, 10, "thickness");
      if (!(p.band_fraction > 0.0 && p.band_fraction <= 1.0))
        throw Error("band_fraction must lie in (0, 1]");
      break;
    }
    case Kind::kElastic: {
      const auto& p = ParamsAs<ElasticParams>(spec);
      CheckRange(p.alpha, 0, 200, "alpha");
      CheckRange(p.sigma, 0.5, 50, "sigma");
      break;
    }
    case Kind::kRandomAffine: {
      const auto& p = ParamsAs<AffineParams>(spec);
      CheckRange(p.shear_degrees, -30, 30, "shear_degrees");
      CheckRange(p.scale, 0.5, 2.0, "scale");
      break;
    }
    case Kind::kRandomPerspective: {
      const double d = ParamsAs<PerspectiveParams>(spec).distortion;
      if (!(d >= 0.0 && d <= 0.5))
        throw Error("distortion must lie in [0, 0.5]");
      break;
    }
    default:
      throw Error("unknown augmentation kind");
  }
}

std::uint64_t AugmentSeed::StreamSeed() const {
  std::uint64_t h = SplitMix64(global_seed);
  h = SplitMix64(h ^ Fnv1a(line_id));
  h = SplitMix64(h ^ static_cast<std::uint64_t>(epoch));
  return h;
}

AugmentResult Apply(const AugmentationSpec& spec, const LineImage& image,
                    const AugmentSeed& seed) {
  Validate(spec);
  SeededStream stream(seed.StreamSeed());
  if (!stream.Bernoulli(spec.apply_probability)) return {image, false, {}};
  AugmentResult result{image, true, {}};
  result.image = Transform(spec, image, stream, &result.warning);
  return result;
}

LineImage Transform(const AugmentationSpec& spec, const LineImage& image,
                    SeededStream& stream, std::string* warning) {
  Validate(spec);
  switch (spec.kind) {
    case Kind::kNone:
      return image;
    case Kind::kRandomRotation: {
      const auto& p = std::get<RotationParams>(spec.params);
      return Rotate(image, stream.Uniform(p.degrees.lo, p.degrees.hi));
    }
    case Kind::kGaussianBlur: {
      const auto& p = std::get<BlurParams>(spec.params);
      return GaussianBlur(image, stream.Uniform(p.sigma.lo, p.sigma.hi));
    }
    case Kind::kDilation:
    case Kind::kErosion: {
      const auto& p = std::get<MorphParams>(spec.params);
      const int size = static_cast<int>(stream.UniformInt(p.size.lo, p.size.hi));
      const auto se = StructuringElement::Make(size, p.element);
      return spec.kind == Kind::kDilation ? Dilate(image, se) : Erode(image, se);
    }
    case Kind::kResize: {
      const auto& p = std::get<ResizeParams>(spec.params);
      return ResizeCycle(image, stream.Uniform(p.factor.lo, p.factor.hi));
    }
    case Kind::kReResize: {
      const auto& p = std::get<ReResizeParams>(spec.params);
      const int cycles =
          static_cast<int>(stream.UniformInt(p.cycles.lo, p.cycles.hi));
      LineImage out = image;
      for (int i = 0; i < cycles; ++i)
        out = ResizeCycle(out, stream.Uniform(p.factor.lo, p.factor.hi));
      return out;
    }
    case Kind::kUnderline:
      return RandomUnderline(image, std::get<UnderlineParams>(spec.params),
                             stream, warning);
    case Kind::kElastic: {
      const auto& p = std::get<ElasticParams>(spec.params);
      const double alpha = stream.Uniform(p.alpha.lo, p.alpha.hi);
      const double sigma = stream.Uniform(p.sigma.lo, p.sigma.hi);
      return Warp(image,
                  ElasticField(image.width(), image.height(), alpha, sigma, stream));
    }
    case Kind::kRandomAffine: {
      const auto& p = std::get<AffineParams>(spec.params);
      const double shear = stream.Uniform(p.shear_degrees.lo, p.shear_degrees.hi);
      const double scale = stream.Uniform(p.scale.lo, p.scale.hi);
      return ShearScale(image, shear, scale);
    }
    case Kind::kRandomPerspective: {
      const auto& p = std::get<PerspectiveParams>(spec.params);
      std::array<std::pair<double, double>, 4> draws;
      for (auto& [fx, fy] : draws) {
        fx = stream.Uniform();
        fy = stream.Uniform();
      }
      return Perspective(image, p.distortion, draws);
    }
  }
  throw Error("unknown augmentation kind");
}

DisplacementField ElasticField(int width, int height, double alpha,
                               double sigma, SeededStream& stream) {
  if (!(alpha >= 0)) throw Error("elastic alpha must be >= 0");
  if (!(sigma > 0)) throw Error("elastic sigma must be > 0");
  DisplacementField field(width, height);
  for (double& v : field.dx) v = stream.Uniform(-1.0, 1.0);
  for (double& v : field.dy) v = stream.Uniform(-1.0, 1.0);
  if (alpha == 0) {
    std::fill(field.dx.begin(), field.dx.end(), 0.0);
    std::fill(field.dy.begin(), field.dy.end(), 0.0);
    return field;
  }
  const auto kernel = GaussianKernel(sigma);
  SmoothPlane(field.dx, width, height, kernel);
  SmoothPlane(field.dy, width, height, kernel);
  for (double& v : field.dx) v *= alpha;
  for (double& v : field.dy) v *= alpha;
  return field;
}

DisplacementField HomographyField(int width, int height, const Homography& h) {
  DisplacementField field(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double w = h[6] * x + h[7] * y + h[8];
      const double sx = (h[0] * x + h[1] * y + h[2]) / w;
      const double sy = (h[3] * x + h[4] * y + h[5]) / w;
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      field.dx[i] = sx - x;
      field.dy[i] = sy - y;
    }
  }
  return field;
}

Homography SolveHomography(const std::array<std::pair<double, double>, 4>& from,
                           const std::array<std::pair<double, double>, 4>& to) {
  Eigen::Matrix<double, 8, 8> a;
  Eigen::Matrix<double, 8, 1> b;
  for (int i = 0; i < 4; ++i) {
    const auto [x, y] = from[i];
    const auto [u, v] = to[i];
    a.row(2 * i) << x, y, 1, 0, 0, 0, -u * x, -u * y;
    a.row(2 * i + 1) << 0, 0, 0, x, y, 1, -v * x, -v * y;
    b(2 * i) = u;
    b(2 * i + 1) = v;
  }
  Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(a);
  if (!lu.isInvertible()) throw Error("degenerate homography correspondences");
  const Eigen::Matrix<double, 8, 1> h = lu.solve(b);
  return {h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), 1.0};
}

LineImage Warp(const LineImage& image, const DisplacementField& field) {
  if (field.width != image.width() || field.height != image.height())
    throw Error("displacement field size does not match image");
  LineImage out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * image.width() + x;
      if (field.dx[i] == 0 && field.dy[i] == 0) {
        out.at(x, y) = image.at(x, y);
        continue;
      }
      out.at(x, y) =
          ClampToByte(SampleBilinear(image, x + field.dx[i], y + field.dy[i]));
    }
  }
  return out;
}

LineImage Rotate(const LineImage& image, double degrees) {
  if (degrees == 0) return image;
  const double cx = (image.width() - 1) / 2.0;
  const double cy = (image.height() - 1) / 2.0;
  const double c = std::cos(degrees * kDegToRad);
  const double s = std::sin(degrees * kDegToRad);
  // Output -> source is the inverse rotation about the centre.
  const Homography h = {c, s, cx - c * cx - s * cy,
                        -s, c, cy + s * cx - c * cy,
                        0, 0, 1};
  return Warp(image, HomographyField(image.width(), image.height(), h));
}

LineImage ShearScale(const LineImage& image, double shear_degrees, double scale) {
  if (!(scale > 0)) throw Error("scale must be positive");
  const double cx = (image.width() - 1) / 2.0;
  const double cy = (image.height() - 1) / 2.0;
  // Forward map p' = c + scale * [[1, k], [0, 1]] (p - c); invert it.
  const double k = std::tan(shear_degrees * kDegToRad);
  const double inv = 1.0 / scale;
  const Homography h = {inv, -k * inv, cx - inv * cx + k * inv * cy,
                        0, inv, cy - inv * cy,
                        0, 0, 1};
  return Warp(image, HomographyField(image.width(), image.height(), h));
}

LineImage Perspective(const LineImage& image, double distortion,
                      const std::array<std::pair<double, double>, 4>& corner_draws) {
  const double w = image.width() - 1;
  const double hgt = image.height() - 1;
  const double mx = distortion * image.width();
  const double my = distortion * image.height();
  const std::array<std::pair<double, double>, 4> src = {
      {{0, 0}, {w, 0}, {w, hgt}, {0, hgt}}};
  const std::array<std::pair<double, double>, 4> dst = {{
      {corner_draws[0].first * mx, corner_draws[0].second * my},
      {w - corner_draws[1].first * mx, corner_draws[1].second * my},
      {w - corner_draws[2].first * mx, hgt - corner_draws[2].second * my},
      {corner_draws[3].first * mx, hgt - corner_draws[3].second * my},
  }};
  if (image.width() < 2 || image.height() < 2) return image;
  return Warp(image, HomographyField(image.width(), image.height(),
                                     SolveHomography(dst, src)));
}

LineImage GaussianBlur(const LineImage& image, double sigma) {
  if (sigma < 0) throw Error("blur sigma must be >= 0");
  if (sigma == 0) return image;
  std::vector<double> plane(image.pixels().begin(), image.pixels().end());
  SmoothPlane(plane, image.width(), image.height(), GaussianKernel(sigma));
  LineImage out(image.width(), image.height());
  auto dst = out.pixels();
  for (std::size_t i = 0; i < plane.size(); ++i) dst[i] = ClampToByte(plane[i]);
  return out;
}

StructuringElement StructuringElement::Make(int size, Element element) {
  if (size < 1) throw Error("structuring element size must be >= 1");
  StructuringElement se;
  const int anchor = size / 2;
  for (int j = 0; j < size; ++j)
    for (int i = 0; i < size; ++i)
      if (element == Element::kSquare || i == anchor || j == anchor)
        se.offsets.emplace_back(i - anchor, j - anchor);
  return se;
}

LineImage Dilate(const LineImage& image, const StructuringElement& se) {
  return Morph(image, se, /*dilate=*/true);
}

LineImage Erode(const LineImage& image, const StructuringElement& se) {
  return Morph(image, se, /*dilate=*/false);
}

LineImage ResizeCycle(const LineImage& image, double factor) {
  if (!(factor > 0 && factor <= 1)) throw Error("resize factor must be in (0, 1]");
  const int w = std::max(1, static_cast<int>(std::lround(image.width() * factor)));
  const int h = std::max(1, static_cast<int>(std::lround(image.height() * factor)));
  return imaging::ResizeBilinear(imaging::ResizeBilinear(image, w, h),
                                 image.width(), image.height());
}

LineImage DrawUnderline(const LineImage& image, int y, int thickness, int x0,
                        int x1) {
  LineImage out = image;
  const int ya = std::max(0, y);
  const int yb = std::min(image.height(), y + thickness);
  const int xa = std::max(0, x0);
  const int xb = std::min(image.width(), x1);
  for (int yy = ya; yy < yb; ++yy)
    for (int xx = xa; xx < xb; ++xx) out.at(xx, yy) = imaging::kInk;
  return out;
}

}  // namespace htrkit::augment
