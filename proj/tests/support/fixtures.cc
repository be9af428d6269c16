// tests/support/fixtures.cc

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

#include "fixtures.h"

#include <atomic>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <unistd.h>

#include "htrkit/image_io.h"
#include "htrkit/random.h"
#include "htrkit/unicode.h"

namespace htrkit::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  const auto base = fs::temp_directory_path();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto candidate = base / ("htrkit_test_" + std::to_string(::getpid()) + "_" +
                             std::to_string(counter++));
    if (fs::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create temp dir");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

namespace {

const std::vector<std::string> kWords = {
    "ferre", "sed",   "hanc",  "levius", "tu",     "potes",  "ipse",  "moram",
    "et",    "nimiis", "mersus", "coecus", "ionas", "aquis",  "quorum", "foedera",
    "mihi",  "causa", "libido", "fuit",   "deus",   "pater",  "verbum", "gratia",
    "amen",  "fides", "lux",    "pax",    "yhesus", "quaeso", "vale",   "bene"};

int GlyphWidth(char32_t c) { return c == U' ' ? 6 : 5 + static_cast<int>(c % 4); }

}  // namespace

std::string RandomLatinLine(std::uint64_t seed) {
  SeededStream s(seed);
  const int words = static_cast<int>(s.UniformInt(3, 6));
  std::string out;
  for (int i = 0; i < words; ++i) {
    if (i) out += ' ';
    std::string w = kWords[s.UniformInt(0, static_cast<std::int64_t>(kWords.size()) - 1)];
    if (i == 0) w[0] = static_cast<char>(w[0] - 'a' + 'A');
    out += w;
  }
  if (s.Bernoulli(0.3)) out += '.';
  return out;
}

void DrawText(imaging::LineImage& image, const pagexml::Rect& box, const std::string& text,
              std::uint8_t ink) {
  const int top = box.y0 + box.height() / 4;
  const int bottom = box.y1 - box.height() / 4;
  int x = box.x0 + 3;
  for (char32_t c : unicode::Decode(text)) {
    const int gw = GlyphWidth(c);
    if (c != U' ') {
      // Two strokes whose heights depend on the code point.
      const int rise = static_cast<int>(c % 5);
      for (int yy = top - rise; yy < bottom; ++yy)
        for (int xx = x; xx < x + 2 && xx < box.x1; ++xx)
          if (image.contains(xx, yy)) image.at(xx, yy) = ink;
      for (int yy = top + (bottom - top) / 2; yy < bottom; ++yy)
        for (int xx = x + 2; xx < x + gw - 1 && xx < box.x1; ++xx)
          if (image.contains(xx, yy) && (yy == bottom - 1 || xx == x + gw - 2))
            image.at(xx, yy) = ink;
    }
    x += gw;
    if (x >= box.x1 - 3) break;
  }
}

pagexml::PageDocument MakePage(const std::string& page_id, int lines, std::uint64_t seed) {
  pagexml::PageDocument page;
  page.page_id = page_id;
  page.image_filename = page_id + ".png";
  page.image_width = 420;
  page.image_height = 40 + lines * 42;
  for (int i = 0; i < lines; ++i) {
    pagexml::LineRecord line;
    line.line_id = "l" + std::to_string(i + 1);
    const int y0 = 20 + i * 42;
    const int y1 = y0 + 38;
    const int skew = static_cast<int>(i % 3);
    line.polygon = {{10, y0 + skew}, {400, y0}, {402, y1}, {12, y1 - skew}};
    line.baseline = std::vector<pagexml::Point>{{12, y1 - 8}, {398, y1 - 8}};
    line.transcription = RandomLatinLine(seed * 1000 + static_cast<std::uint64_t>(i));
    page.lines.push_back(std::move(line));
  }
  return page;
}

SyntheticCorpus WriteSyntheticCorpus(const fs::path& root, int pages, int lines_per_page,
                                     std::uint64_t seed) {
  SyntheticCorpus corpus;
  corpus.xml_dir = root / "xml";
  corpus.image_dir = root / "images";
  fs::create_directories(corpus.xml_dir);
  fs::create_directories(corpus.image_dir);
  for (int p = 0; p < pages; ++p) {
    const std::string page_id = "page_" + std::to_string(p + 1);
    auto page = MakePage(page_id, lines_per_page, seed * 100 + static_cast<std::uint64_t>(p));
    if (p == 1 && page.lines.size() >= 2) {
      // Second line reaches 8 px into the first one.
      auto& l = page.lines[1];
      for (auto& pt : l.polygon) pt.y -= 12;
    }
    pagexml::LineRecord blank;
    blank.line_id = "l_empty";
    blank.polygon = {{10, page.image_height - 14}, {100, page.image_height - 14},
                     {100, page.image_height - 2}, {10, page.image_height - 2}};
    blank.annotated = false;
    page.lines.push_back(blank);

    imaging::LineImage scan(page.image_width, page.image_height, 215);
    for (const auto& line : page.lines) {
      if (!line.annotated) continue;
      DrawText(scan, pagexml::CropRect(line, page), line.transcription, 40);
      ++corpus.annotated_lines;
    }
    imaging::WritePng((corpus.image_dir / page.image_filename).string(), scan);
    std::ofstream((corpus.xml_dir / (page_id + ".xml")).string(), std::ios::binary)
        << pagexml::WritePage(page);
    corpus.pages.push_back(std::move(page));
  }
  return corpus;
}

namespace {

std::string Corrupt(const std::string& text, SeededStream& s) {
  std::u32string u = unicode::Decode(text);
  const std::u32string alphabet = U"abcdefghilmnopqrstuvxy ";
  const int edits = static_cast<int>(s.UniformInt(1, 2));
  for (int e = 0; e < edits; ++e) {
    const auto op = s.UniformInt(0, 2);
    const auto c = alphabet[s.UniformInt(0, static_cast<std::int64_t>(alphabet.size()) - 1)];
    if (u.empty() || op == 0) {
      u.insert(u.begin() + s.UniformInt(0, static_cast<std::int64_t>(u.size())), c);
    } else if (op == 1) {
      u[s.UniformInt(0, static_cast<std::int64_t>(u.size()) - 1)] = c;
    } else {
      u.erase(u.begin() + s.UniformInt(0, static_cast<std::int64_t>(u.size()) - 1));
    }
  }
  return unicode::Encode(u);
}

}  // namespace

std::vector<ensemble::HypothesisSet> FakeModel(const std::vector<dataset::ManifestEntry>& entries,
                                               const std::string& model_id, double error_rate,
                                               std::uint64_t seed, int beam) {
  std::vector<ensemble::HypothesisSet> out;
  for (const auto& e : entries) {
    SeededStream s(SplitMix64(seed ^ Fnv1a(e.line_id) ^ Fnv1a(model_id)));
    ensemble::HypothesisSet set{e.line_id, model_id, {}, std::nullopt};
    std::string best = s.Bernoulli(error_rate) ? Corrupt(e.transcription, s) : e.transcription;
    double score = -0.05 - s.Uniform();
    for (int r = 1; r <= beam; ++r) {
      set.hypotheses.push_back({r == 1 ? best : Corrupt(best, s), score, r});
      score -= 0.1 + s.Uniform();
    }
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<ensemble::HypothesisSet> MajorityCorrectModels(
    const std::vector<dataset::ManifestEntry>& entries) {
  std::vector<ensemble::HypothesisSet> out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    for (int m = 0; m < 5; ++m) {
      const bool correct = (static_cast<int>(i) + m) % 5 < 3;
      const std::string model = "model_" + std::to_string(m);
      ensemble::HypothesisSet set{e.line_id, model, {}, std::nullopt};
      for (int r = 1; r <= 5; ++r) {
        std::string text = (correct && r == 1)
                               ? e.transcription
                               : e.transcription + " ~" + model + "/" + std::to_string(r);
        set.hypotheses.push_back({text, -0.5 * r, r});
      }
      out.push_back(std::move(set));
    }
  }
  return out;
}

}  // namespace htrkit::testing
