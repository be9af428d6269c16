// include/htrkit/metrics.h

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

#ifndef HTRKIT_METRICS_H_
#define HTRKIT_METRICS_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace htrkit::metrics {

enum class OpType { kMatch, kSubstitute, kDelete, kInsert };

struct EditOp {
  OpType type;
  char32_t ref = 0;  // unset for kInsert
  char32_t hyp = 0;  // unset for kDelete
  bool operator==(const EditOp&) const = default;
};

// Minimal unit-cost alignment of a reference against a hypothesis.
// matches + substitutions + deletions == n_ref always holds.
struct EditAlignment {
  std::vector<EditOp> ops;
  std::size_t matches = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t n_ref = 0;

  std::size_t cost() const { return substitutions + deletions + insertions; }
};

// Levenshtein alignment over code points. When several alignments are
// optimal the backtrace (from the end) prefers Match > Substitute > Delete >
// Insert, so the result is deterministic.
EditAlignment Align(std::u32string_view reference, std::u32string_view hypothesis);

// UTF-8 overload: both sides are NFC-normalized (and optionally lowercased)
// before alignment. Spaces count as characters.
EditAlignment Align(std::string_view reference, std::string_view hypothesis,
                    bool lowercase = false);

// (S + D + I) / N as a fraction; may exceed 1. Throws htrkit::Error for an
// empty reference.
double Cer(std::string_view reference, std::string_view hypothesis,
           bool lowercase = false);

using TextPair = std::pair<std::string, std::string>;  // (reference, hypothesis)

// Micro-averaged sum(S + D + I) / sum(N) as a fraction. Throws for an empty
// corpus or any empty reference.
double CorpusCer(std::span<const TextPair> pairs, bool lowercase = false);
double CorpusCer(std::span<const EditAlignment> alignments);

struct CharStats {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;

  // Reference occurrences of the character.
  std::size_t support() const { return tp + fn; }
};

// Per-character precision/recall/F1 as fractions in [0, 1].
//   tp: matches of c
//   fn: substitutions and deletions whose reference character is c
//   fp: substitutions and insertions whose hypothesis character is c
// F1 is 0 whenever tp is 0. Macro average is the unweighted mean over every
// observed character; the weighted average weights by reference frequency.
// accuracy is matches / n_ref.
struct CharReport {
  std::map<char32_t, CharStats> chars;
  std::size_t matches = 0;
  std::size_t n_ref = 0;
  double accuracy = 0;
  double macro_avg_f1 = 0;
  double weighted_avg_f1 = 0;
};

CharReport BuildCharReport(std::span<const EditAlignment> alignments);

// Stands for the empty side of an insertion or deletion.
inline constexpr char32_t kEpsilon = 0x110000;

// Counts Match(c) at (c, c), Substitute(r, h) at (r, h), Delete(r) at
// (r, eps) and Insert(h) at (eps, h).
class ConfusionMatrix {
 public:
  void Add(const EditAlignment& alignment);

  std::size_t count(char32_t ref, char32_t hyp) const;
  // Sorted observed characters, kEpsilon last.
  std::vector<char32_t> alphabet() const;
  std::size_t RowSum(char32_t ref) const;
  const std::map<std::pair<char32_t, char32_t>, std::size_t>& cells() const {
    return cells_;
  }

  // Square CSV with a header row; labels use unicode::CharLabel and "<eps>".
  std::string ToCsv() const;

 private:
  std::map<std::pair<char32_t, char32_t>, std::size_t> cells_;
};

ConfusionMatrix BuildConfusion(std::span<const EditAlignment> alignments);

}  // namespace htrkit::metrics

#endif  // HTRKIT_METRICS_H_
