// src/dataset.cc

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

#include "htrkit/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "htrkit/error.h"
#include "htrkit/random.h"
#include "htrkit/unicode.h"

namespace htrkit::dataset {

using nlohmann::json;

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kValidation: return "validation";
    case Split::kUnassigned: break;
  }
  return "unassigned";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "validation") return Split::kValidation;
  if (name == "unassigned") return Split::kUnassigned;
  throw Error("unknown split '" + std::string(name) + "'");
}

std::string ManifestLineId(std::string_view page_id, std::string_view line_id) {
  return std::string(page_id) + "_" + std::string(line_id);
}

BuildResult BuildManifest(std::span<const pagexml::PageDocument> pages,
                          const std::string& image_root) {
  BuildResult result;
  std::set<std::string> page_ids, line_ids;
  for (const pagexml::PageDocument& page : pages) {
    if (!page_ids.insert(page.page_id).second)
      throw Error("duplicate page id '" + page.page_id + "'");
    for (const pagexml::LineRecord& line : page.lines) {
      if (!line.annotated) {
        result.warnings.push_back("page " + page.page_id + " line " +
                                  line.line_id + ": no transcription, excluded");
        continue;
      }
      ManifestEntry e;
      e.line_id = ManifestLineId(page.page_id, line.line_id);
      if (!line_ids.insert(e.line_id).second)
        throw Error("duplicate line id '" + e.line_id + "'");
      e.page_id = page.page_id;
      e.image_path = image_root.empty() ? e.line_id + ".png"
                                        : image_root + "/" + e.line_id + ".png";
      e.transcription = line.transcription;
      result.manifest.entries.push_back(std::move(e));
    }
  }
  return result;
}

Manifest SplitManifest(const Manifest& manifest, double validation_fraction,
                       std::uint64_t seed) {
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
    throw Error("validation fraction must lie strictly between 0 and 1");
  const std::size_t n = manifest.entries.size();
  const auto n_val = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * validation_fraction));
  if (n_val == 0 || n_val >= n)
    throw Error("fraction " + std::to_string(validation_fraction) + " of " +
                std::to_string(n) + " entries leaves one side empty");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return manifest.entries[a].line_id < manifest.entries[b].line_id;
  });
  SeededStream stream(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(
        stream.UniformInt(0, static_cast<std::int64_t>(i)));
    std::swap(order[i], order[j]);
  }

  Manifest out = manifest;
  for (std::size_t k = 0; k < n; ++k)
    out.entries[order[k]].split = k < n_val ? Split::kValidation : Split::kTrain;
  return out;
}

Stats ComputeStats(const Manifest& manifest) {
  Stats s;
  for (const ManifestEntry& e : manifest.entries) {
    ++s.lines_per_split[e.split];
    const std::u32string text = unicode::Canonical(e.transcription);
    ++s.length_histogram[text.size()];
    for (char32_t c : text) ++s.char_histogram[c];
    s.total_chars += text.size();
    ++s.total_lines;
  }
  return s;
}

json ToJson(const Stats& s) {
  json splits = json::object();
  for (Split split : {Split::kTrain, Split::kValidation, Split::kUnassigned}) {
    const auto it = s.lines_per_split.find(split);
    splits[std::string(SplitName(split))] =
        it == s.lines_per_split.end() ? 0 : it->second;
  }
  json chars = json::array();
  for (const auto& [c, n] : s.char_histogram)
    chars.push_back({{"char", unicode::Encode(c)},
                     {"label", unicode::CharLabel(c)},
                     {"count", n}});
  json lengths = json::array();
  std::size_t min_len = 0, max_len = 0;
  if (!s.length_histogram.empty()) {
    min_len = s.length_histogram.begin()->first;
    max_len = s.length_histogram.rbegin()->first;
  }
  for (const auto& [len, n] : s.length_histogram)
    lengths.push_back({{"length", len}, {"count", n}});
  return {{"total_lines", s.total_lines},
          {"total_chars", s.total_chars},
          {"lines_per_split", splits},
          {"min_length", min_len},
          {"max_length", max_len},
          {"mean_length", s.total_lines == 0
                              ? 0.0
                              : static_cast<double>(s.total_chars) /
                                    static_cast<double>(s.total_lines)},
          {"char_histogram", chars},
          {"length_histogram", lengths}};
}

json ToJson(const ManifestEntry& e) {
  return {{"line_id", e.line_id},
          {"page_id", e.page_id},
          {"image_path", e.image_path},
          {"transcription", e.transcription},
          {"split", std::string(SplitName(e.split))}};
}

std::vector<std::string> ValidateEntryJson(const json& record) {
  if (!record.is_object()) return {"entry is not a JSON object"};
  std::vector<std::string> problems;
  static const std::set<std::string> kKeys = {"line_id", "page_id", "image_path",
                                              "transcription", "split"};
  for (const auto& [key, _] : record.items())
    if (!kKeys.contains(key)) problems.push_back("unexpected key '" + key + "'");
  for (const std::string& key : kKeys)
    if (!record.contains(key) || !record[key].is_string())
      problems.push_back("'" + key + "' must be a string");
  if (!problems.empty()) return problems;
  if (record["line_id"].get_ref<const std::string&>().empty())
    problems.push_back("'line_id' is empty");
  const auto& split = record["split"].get_ref<const std::string&>();
  if (split != "train" && split != "validation" && split != "unassigned")
    problems.push_back("'split' must be train, validation or unassigned");
  return problems;
}

ManifestEntry EntryFromJson(const json& record) {
  const auto problems = ValidateEntryJson(record);
  if (!problems.empty()) {
    std::string msg = "invalid manifest entry:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw Error(msg);
  }
  ManifestEntry e;
  e.line_id = record["line_id"].get<std::string>();
  e.page_id = record["page_id"].get<std::string>();
  e.image_path = record["image_path"].get<std::string>();
  e.transcription = record["transcription"].get<std::string>();
  e.split = ParseSplit(record["split"].get<std::string>());
  return e;
}

Manifest ReadManifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  Manifest m;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0, offset = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what(),
                       line_offset + (e.byte > 0 ? e.byte - 1 : 0));
    }
    try {
      m.entries.push_back(EntryFromJson(record));
    } catch (const Error& e) {
      throw Error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!ids.insert(m.entries.back().line_id).second)
      throw Error(path + ":" + std::to_string(line_no) + ": duplicate line_id '" +
                  m.entries.back().line_id + "'");
  }
  return m;
}

void WriteManifest(const std::string& path, const Manifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  for (const ManifestEntry& e : manifest.entries) out << ToJson(e).dump() << '\n';
  if (!out) throw Error("failed writing " + path);
}

}  // namespace htrkit::dataset
