// tests/support/fixtures.h

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

#ifndef HTRKIT_TESTS_FIXTURES_H_
#define HTRKIT_TESTS_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "htrkit/dataset.h"
#include "htrkit/hypotheses.h"
#include "htrkit/image.h"
#include "htrkit/pagexml.h"

namespace htrkit::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

struct SyntheticCorpus {
  std::filesystem::path xml_dir;
  std::filesystem::path image_dir;
  std::vector<pagexml::PageDocument> pages;
  std::size_t annotated_lines = 0;
};

// Writes `pages` PAGE-XML files and matching grey page scans (ink 40 on
// background 215). Page 1 carries a pair of overlapping lines and every page
// has one unannotated line.
SyntheticCorpus WriteSyntheticCorpus(const std::filesystem::path& root, int pages = 3,
                                     int lines_per_page = 4, std::uint64_t seed = 1);

// Page document built in memory, no files.
pagexml::PageDocument MakePage(const std::string& page_id, int lines,
                               std::uint64_t seed);

// A line of pseudo-Latin text.
std::string RandomLatinLine(std::uint64_t seed);

// Renders `text` as blocky glyph strokes, for line or page images.
void DrawText(imaging::LineImage& image, const pagexml::Rect& box, const std::string& text,
              std::uint8_t ink);

// n-best lists for every manifest entry. With probability `error_rate`
// per line the rank-1 text is corrupted; lower ranks are further edits.
std::vector<ensemble::HypothesisSet> FakeModel(const std::vector<dataset::ManifestEntry>& entries,
                                               const std::string& model_id, double error_rate,
                                               std::uint64_t seed, int beam = 5);

// Five models; on every line exactly three of them put the reference at
// rank 1 and every other hypothesis is unique, so the vote is always
// right while each model alone makes mistakes.
std::vector<ensemble::HypothesisSet> MajorityCorrectModels(
    const std::vector<dataset::ManifestEntry>& entries);

}  // namespace htrkit::testing

#endif  // HTRKIT_TESTS_FIXTURES_H_
