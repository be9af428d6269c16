// include/htrkit/hypotheses.h

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

#ifndef HTRKIT_HYPOTHESES_H_
#define HTRKIT_HYPOTHESES_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace htrkit::ensemble {

inline constexpr int kDefaultBeamWidth = 5;

struct Hypothesis {
  std::string text;
  double score = 0;  // sequence log-probability
  int rank = 1;      // 1-based
  bool operator==(const Hypothesis&) const = default;
};

// One model's n-best list for one line. This is the JSON-lines wire format
// shared with the inference adapter, one object per line of the file:
//
//   {"line_id": "p1_l3", "model_id": "elastic",
//    "hypotheses": [{"text": "...", "score": -0.12, "rank": 1}, ...]}
//
// A producer that could not read the image emits an empty "hypotheses"
// array plus an "error" string. No other keys are allowed.
struct HypothesisSet {
  std::string line_id;
  std::string model_id;
  std::vector<Hypothesis> hypotheses;
  std::optional<std::string> error;
  bool operator==(const HypothesisSet&) const = default;
};

// Schema problems of one record; empty when valid. Checks: required keys and
// types, ranks contiguous from 1, finite scores non-increasing with rank, at
// most `beam_width` entries, valid UTF-8 text.
std::vector<std::string> ValidateRecord(const nlohmann::json& record,
                                        int beam_width = kDefaultBeamWidth);

nlohmann::json ToJson(const HypothesisSet& set);
// Throws htrkit::Error listing the schema problems.
HypothesisSet SetFromJson(const nlohmann::json& record,
                          int beam_width = kDefaultBeamWidth);

// Throws ParseError (byte offset of the offending line) for bad JSON and
// htrkit::Error naming the line number for schema violations or a repeated
// (line_id, model_id) pair.
std::vector<HypothesisSet> ReadHypotheses(const std::string& path,
                                          int beam_width = kDefaultBeamWidth);
void WriteHypotheses(const std::string& path,
                     const std::vector<HypothesisSet>& sets);

struct FileCheck {
  std::size_t records = 0;
  std::size_t hypotheses = 0;
  std::vector<std::string> problems;  // "line N: ..."
};

// Validates a whole file without throwing on schema problems.
FileCheck CheckHypothesesFile(const std::string& path,
                              int beam_width = kDefaultBeamWidth);

}  // namespace htrkit::ensemble

#endif  // HTRKIT_HYPOTHESES_H_
