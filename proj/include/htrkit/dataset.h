// include/htrkit/dataset.h

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

#ifndef HTRKIT_DATASET_H_
#define HTRKIT_DATASET_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "htrkit/pagexml.h"
#include "json.hpp"

namespace htrkit::dataset {

enum class Split { kUnassigned, kTrain, kValidation };

std::string_view SplitName(Split split);
Split ParseSplit(std::string_view name);

struct ManifestEntry {
  std::string line_id;  // "<page_id>_<TextLine id>", unique across the corpus
  std::string page_id;
  std::string image_path;
  std::string transcription;
  Split split = Split::kUnassigned;
  bool operator==(const ManifestEntry&) const = default;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  bool operator==(const Manifest&) const = default;
};

std::string ManifestLineId(std::string_view page_id, std::string_view line_id);

struct BuildResult {
  Manifest manifest;
  std::vector<std::string> warnings;
};

// One unassigned entry per annotated line, image_path =
// image_root/<line_id>.png. Unannotated lines are left out with a warning.
// Throws htrkit::Error on repeated page ids or line ids.
BuildResult BuildManifest(std::span<const pagexml::PageDocument> pages,
                          const std::string& image_root);

// Seeded Fisher-Yates shuffle of the entries ordered by line_id; the first
// round(n * validation_fraction) become validation, the rest train. The
// assignment depends only on the set of line ids, the fraction and the seed.
// Throws htrkit::Error unless 0 < fraction < 1 and both sides are non-empty.
Manifest SplitManifest(const Manifest& manifest, double validation_fraction,
                       std::uint64_t seed);

struct Stats {
  std::map<Split, std::size_t> lines_per_split;
  std::map<char32_t, std::size_t> char_histogram;   // NFC code points
  std::map<std::size_t, std::size_t> length_histogram;  // code points per line
  std::size_t total_lines = 0;
  std::size_t total_chars = 0;
};

Stats ComputeStats(const Manifest& manifest);
nlohmann::json ToJson(const Stats& stats);

// JSON-lines: {"line_id", "page_id", "image_path", "transcription", "split"}.
nlohmann::json ToJson(const ManifestEntry& entry);
ManifestEntry EntryFromJson(const nlohmann::json& record);
std::vector<std::string> ValidateEntryJson(const nlohmann::json& record);
Manifest ReadManifest(const std::string& path);
void WriteManifest(const std::string& path, const Manifest& manifest);

}  // namespace htrkit::dataset

#endif  // HTRKIT_DATASET_H_
