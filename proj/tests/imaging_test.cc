// tests/imaging_test.cc

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

#include <jpeglib.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "htrkit/error.h"
#include "htrkit/image_io.h"
#include "oracles.h"

using namespace htrkit::imaging;
using htrkit::pagexml::Rect;

namespace {

LineImage Checkerboard(int w, int h) {
  LineImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img.at(x, y) = (x + y) % 2 ? 255 : 0;
  return img;
}

LineImage RandomImage(std::mt19937& rng, int w, int h) {
  std::uniform_int_distribution<int> v(0, 255);
  LineImage img(w, h);
  for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(v(rng));
  return img;
}

// Background `bg`, strokes `ink`, a few intermediate pixels.
LineImage Bimodal(int w, int h, std::uint8_t ink, std::uint8_t bg) {
  LineImage img(w, h, bg);
  for (int y = h / 4; y < 3 * h / 4; ++y)
    for (int x = 2; x < w - 2; x += 5) img.at(x, y) = ink;
  return img;
}

double InkFraction(const LineImage& img) {
  std::size_t n = 0;
  for (auto v : img.pixels()) n += v < 128;
  return static_cast<double>(n) / img.size();
}

double InkMass(const LineImage& img) {
  double n = 0;
  for (auto v : img.pixels()) n += (255 - v) / 255.0;
  return n / img.size();
}

// Bilinear sample of `src` at destination (x, y) of a w x h output, with
// pixel centres aligned and coordinates clamped to the source.
double BilinearOracle(const LineImage& src, int w, int h, int x, int y) {
  auto coord = [](int i, int s, int d) {
    double c = (i + 0.5) * s / d - 0.5;
    return std::min(std::max(c, 0.0), s - 1.0);
  };
  const double sx = coord(x, src.width(), w), sy = coord(y, src.height(), h);
  const int x0 = static_cast<int>(sx), y0 = static_cast<int>(sy);
  const int x1 = std::min(x0 + 1, src.width() - 1), y1 = std::min(y0 + 1, src.height() - 1);
  const double ax = sx - x0, ay = sy - y0;
  return (1 - ay) * ((1 - ax) * src.at(x0, y0) + ax * src.at(x1, y0)) +
         ay * ((1 - ax) * src.at(x0, y1) + ax * src.at(x1, y1));
}

}  // namespace

TEST_CASE("line image construction") {
  CHECK_THROWS_AS(LineImage(0, 3), htrkit::Error);
  CHECK_THROWS_AS(LineImage(2, 2, std::vector<std::uint8_t>(3)), htrkit::Error);
  LineImage img(3, 2, 7);
  CHECK(img.size() == 6);
  CHECK(img.at(2, 1) == 7);
}

TEST_CASE("crop") {
  const auto board = Checkerboard(8, 6);
  CHECK(Crop(board, {0, 0, 8, 6}) == board);
  const auto one = Crop(board, {3, 2, 4, 3});
  CHECK(one.width() == 1);
  CHECK(one.at(0, 0) == board.at(3, 2));
  const auto sub = Crop(board, {1, 1, 5, 3});
  CHECK(sub.width() == 4);
  CHECK(sub.height() == 2);
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 4; ++x) CHECK(sub.at(x, y) == board.at(x + 1, y + 1));
  CHECK_THROWS_AS(Crop(board, {5, 0, 9, 2}), htrkit::Error);
  CHECK_THROWS_AS(Crop(board, {2, 2, 2, 4}), htrkit::Error);
}

TEST_CASE("nested crops compose") {
  std::mt19937 rng(2);
  const auto img = RandomImage(rng, 30, 20);
  std::uniform_int_distribution<int> d(0, 9);
  for (int t = 0; t < 100; ++t) {
    const Rect a{d(rng), d(rng) / 2, 30 - d(rng), 20 - d(rng) / 2};
    const Rect b{d(rng) / 3, d(rng) / 4, a.width() - d(rng) / 3, a.height() - d(rng) / 4};
    const Rect ab{a.x0 + b.x0, a.y0 + b.y0, a.x0 + b.x1, a.y0 + b.y1};
    CHECK(Crop(Crop(img, a), b) == Crop(img, ab));
  }
}

TEST_CASE("otsu matches exhaustive search") {
  std::mt19937 rng(4);
  for (int t = 0; t < 60; ++t) {
    auto img = RandomImage(rng, 17, 9);
    if (t % 2) img = Bimodal(40, 12, static_cast<std::uint8_t>(rng() % 90),
                             static_cast<std::uint8_t>(150 + rng() % 100));
    const auto got = OtsuThreshold(img);
    REQUIRE(got);
    CHECK(*got == htrkit::testing::OtsuOracle(img));
  }
  CHECK_FALSE(OtsuThreshold(LineImage(4, 4, 128)));
}

TEST_CASE("binarize") {
  CHECK(Binarize(LineImage(5, 5)) == LineImage(5, 5));
  const auto img = Bimodal(40, 12, 40, 220);
  const int t = htrkit::testing::OtsuOracle(img);
  CHECK(t == 40);
  const auto bin = Binarize(img);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) CHECK(bin.at(x, y) == (img.at(x, y) <= t ? 0 : 255));
  CHECK(Binarize(bin) == bin);
  CHECK(Binarize(Checkerboard(7, 5)) == Checkerboard(7, 5));
}

TEST_CASE("binarize output is two-valued and idempotent") {
  std::mt19937 rng(8);
  for (int t = 0; t < 30; ++t) {
    const auto b = Binarize(RandomImage(rng, 13, 11));
    for (auto v : b.pixels()) CHECK((v == 0 || v == 255));
    CHECK(Binarize(b) == b);
  }
}

TEST_CASE("normalize background") {
  const auto grey = Bimodal(60, 20, 30, 200);
  const auto norm = NormalizeBackground(grey);
  double sum = 0, n = 0;
  for (int y = 0; y < grey.height(); ++y)
    for (int x = 0; x < grey.width(); ++x)
      if (grey.at(x, y) == 200) sum += norm.at(x, y), n += 1;
  CHECK(sum / n >= 250);
  // Ink contrast is not reduced.
  CHECK(norm.at(2, 10) <= 40);
  CHECK(int(norm.at(0, 0)) - int(norm.at(2, 10)) >= 200 - 30);
  CHECK(NormalizeBackground(Checkerboard(6, 6)) == Checkerboard(6, 6));
  CHECK(NormalizeBackground(LineImage(5, 3, 128)) == LineImage(5, 3, 255));
  CHECK(NormalizeBackground(LineImage(5, 3, 0)) == LineImage(5, 3, 255));
}

TEST_CASE("ink-heavy binary images keep their ink") {
  LineImage img(10, 10, 0);
  for (int x = 0; x < 10; ++x) img.at(x, 0) = 255;
  CHECK(NormalizeBackground(img) == img);
}

TEST_CASE("resize to height") {
  std::mt19937 rng(6);
  const auto img = RandomImage(rng, 100, 50);
  CHECK(ResizeToHeight(img, 50, std::nullopt) == img);

  const auto small = RandomImage(rng, 100, 25);
  const auto up = ResizeToHeight(small, 50, std::nullopt);
  REQUIRE(up.width() == 200);
  REQUIRE(up.height() == 50);
  for (int y = 0; y < 50; ++y)
    for (int x = 0; x < 200; ++x)
      REQUIRE(std::abs(up.at(x, y) - BilinearOracle(small, 200, 50, x, y)) <= 0.5 + 1e-9);

  const auto narrow = RandomImage(rng, 10, 50);
  const auto padded = ResizeToHeight(narrow, 50, 64, 255);
  CHECK(padded.width() == 64);
  CHECK(padded.height() == 50);
  for (int y = 0; y < 50; ++y) {
    for (int x = 0; x < 10; ++x) CHECK(padded.at(x, y) == narrow.at(x, y));
    for (int x = 10; x < 64; ++x) CHECK(padded.at(x, y) == 255);
  }
}

TEST_CASE("overlong lines are capped and keep their aspect") {
  const LineImage wide(400, 20, 0);
  const auto out = ResizeToHeight(wide, 40, 384, 255);
  CHECK(out.width() == 384);
  CHECK(out.height() == 40);
  // Content 384 x round(20 * 384 / 400) = 384 x 19, centred vertically.
  int ink_rows = 0;
  for (int y = 0; y < 40; ++y) ink_rows += out.at(0, y) == 0;
  CHECK(ink_rows == 19);
  CHECK(out.at(0, 0) == 255);
  CHECK(out.at(0, 39) == 255);
}

TEST_CASE("resizing keeps the ink proportion") {
  // Ink is measured as mass (mean darkness): thresholding the grey edges of
  // 2 px strokes is too coarse at these scales.
  auto page = htrkit::testing::MakePage("ink", 1, 3);
  LineImage line(page.image_width, 60, 255);
  htrkit::testing::DrawText(line, {0, 0, page.image_width, 60}, page.lines[0].transcription, 0);
  const double before = InkMass(line);
  for (int h : {30, 45, 90, 120}) {
    const auto out = ResizeToHeight(line, h, std::nullopt);
    CHECK(std::abs(InkMass(out) - before) <= 0.1 * before);
  }
  // Thick strokes survive thresholding too.
  LineImage bars(200, 40, 255);
  for (int x0 = 10; x0 < 190; x0 += 24)
    for (int y = 8; y < 32; ++y)
      for (int x = x0; x < x0 + 10; ++x) bars.at(x, y) = 0;
  const double bars_before = InkFraction(bars);
  for (int h : {20, 30, 60, 80}) {
    const auto out = ResizeToHeight(bars, h, std::nullopt);
    CHECK(std::abs(InkFraction(out) - bars_before) <= 0.1 * bars_before);
  }
}

TEST_CASE("preprocess pipeline") {
  auto grey = Bimodal(200, 40, 50, 190);
  PreprocessConfig cfg;
  cfg.target_height = 32;
  cfg.max_width = 256;
  const auto out = Preprocess(grey, cfg);
  CHECK(out.height() == 32);
  CHECK(out.width() == 256);
  CHECK(Preprocess(grey, cfg) == out);
  cfg.target_height = 0;
  CHECK_THROWS_AS(Preprocess(grey, cfg), htrkit::Error);
}

TEST_CASE("png round trip") {
  htrkit::testing::TempDir dir;
  std::mt19937 rng(1);
  const auto img = RandomImage(rng, 31, 7);
  WritePng(dir / "a.png", img);
  CHECK(ReadImage(dir / "a.png") == img);
  std::ofstream(dir / "bad.png") << "not an image";
  CHECK_THROWS_AS(ReadImage(dir / "bad.png"), htrkit::Error);
  CHECK_THROWS_AS(ReadImage(dir / "missing.png"), htrkit::Error);
}

TEST_CASE("jpeg input is read as grey") {
  htrkit::testing::TempDir dir;
  const std::string path = dir / "a.jpg";
  const int w = 16, h = 8;
  std::vector<std::uint8_t> rgb(w * h * 3);
  for (int i = 0; i < w * h; ++i) {
    rgb[3 * i] = rgb[3 * i + 1] = rgb[3 * i + 2] = i % w < 8 ? 30 : 220;
  }
  {
    jpeg_compress_struct c;
    jpeg_error_mgr err;
    c.err = jpeg_std_error(&err);
    jpeg_create_compress(&c);
    FILE* f = std::fopen(path.c_str(), "wb");
    REQUIRE(f);
    jpeg_stdio_dest(&c, f);
    c.image_width = w;
    c.image_height = h;
    c.input_components = 3;
    c.in_color_space = JCS_RGB;
    jpeg_set_defaults(&c);
    jpeg_set_quality(&c, 100, TRUE);
    jpeg_start_compress(&c, TRUE);
    for (int y = 0; y < h; ++y) {
      JSAMPROW row = rgb.data() + y * w * 3;
      jpeg_write_scanlines(&c, &row, 1);
    }
    jpeg_finish_compress(&c);
    jpeg_destroy_compress(&c);
    std::fclose(f);
  }
  const auto img = ReadImage(path);
  CHECK(img.width() == w);
  CHECK(img.height() == h);
  CHECK(std::abs(img.at(2, 3) - 30) <= 6);
  CHECK(std::abs(img.at(13, 3) - 220) <= 6);
}
