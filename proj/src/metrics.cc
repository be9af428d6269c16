// src/metrics.cc

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

#include "htrkit/metrics.h"

#include <algorithm>
#include <set>

#include "htrkit/error.h"
#include "htrkit/unicode.h"

namespace htrkit::metrics {

EditAlignment Align(std::u32string_view ref, std::u32string_view hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t cols = m + 1;
  std::vector<std::uint32_t> d((n + 1) * cols);
  for (std::size_t j = 0; j <= m; ++j) d[j] = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    d[i * cols] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t diag =
          d[(i - 1) * cols + j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      const std::uint32_t up = d[(i - 1) * cols + j] + 1;
      const std::uint32_t left = d[i * cols + j - 1] + 1;
      d[i * cols + j] = std::min({diag, up, left});
    }
  }

  EditAlignment out;
  out.n_ref = n;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const std::uint32_t here = d[i * cols + j];
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (d[(i - 1) * cols + j - 1] + (same ? 0 : 1) == here) {
        out.ops.push_back({same ? OpType::kMatch : OpType::kSubstitute,
                           ref[i - 1], hyp[j - 1]});
        ++(same ? out.matches : out.substitutions);
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && d[(i - 1) * cols + j] + 1 == here) {
      out.ops.push_back({OpType::kDelete, ref[i - 1], 0});
      ++out.deletions;
      --i;
      continue;
    }
    out.ops.push_back({OpType::kInsert, 0, hyp[j - 1]});
    ++out.insertions;
    --j;
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

EditAlignment Align(std::string_view reference, std::string_view hypothesis,
                    bool lowercase) {
  return Align(unicode::Canonical(reference, lowercase),
               unicode::Canonical(hypothesis, lowercase));
}

double Cer(std::string_view reference, std::string_view hypothesis,
           bool lowercase) {
  const EditAlignment a = Align(reference, hypothesis, lowercase);
  if (a.n_ref == 0) throw Error("CER is undefined for an empty reference");
  return static_cast<double>(a.cost()) / static_cast<double>(a.n_ref);
}

double CorpusCer(std::span<const EditAlignment> alignments) {
  if (alignments.empty()) throw Error("CER of an empty corpus is undefined");
  std::size_t edits = 0, n = 0;
  for (const EditAlignment& a : alignments) {
    if (a.n_ref == 0) throw Error("corpus contains an empty reference");
    edits += a.cost();
    n += a.n_ref;
  }
  return static_cast<double>(edits) / static_cast<double>(n);
}

double CorpusCer(std::span<const TextPair> pairs, bool lowercase) {
  std::vector<EditAlignment> alignments;
  alignments.reserve(pairs.size());
  for (const auto& [ref, hyp] : pairs)
    alignments.push_back(Align(ref, hyp, lowercase));
  return CorpusCer(alignments);
}

CharReport BuildCharReport(std::span<const EditAlignment> alignments) {
  CharReport report;
  for (const EditAlignment& a : alignments) {
    report.matches += a.matches;
    report.n_ref += a.n_ref;
    for (const EditOp& op : a.ops) {
      switch (op.type) {
        case OpType::kMatch: ++report.chars[op.ref].tp; break;
        case OpType::kSubstitute:
          ++report.chars[op.ref].fn;
          ++report.chars[op.hyp].fp;
          break;
        case OpType::kDelete: ++report.chars[op.ref].fn; break;
        case OpType::kInsert: ++report.chars[op.hyp].fp; break;
      }
    }
  }
  double f1_sum = 0, weighted_sum = 0;
  std::size_t support_sum = 0;
  for (auto& [c, s] : report.chars) {
    if (s.tp > 0) {
      s.precision = static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fp);
      s.recall = static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fn);
      s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
    }
    f1_sum += s.f1;
    weighted_sum += s.f1 * static_cast<double>(s.support());
    support_sum += s.support();
  }
  if (!report.chars.empty())
    report.macro_avg_f1 = f1_sum / static_cast<double>(report.chars.size());
  if (support_sum > 0)
    report.weighted_avg_f1 = weighted_sum / static_cast<double>(support_sum);
  if (report.n_ref > 0)
    report.accuracy =
        static_cast<double>(report.matches) / static_cast<double>(report.n_ref);
  return report;
}

void ConfusionMatrix::Add(const EditAlignment& alignment) {
  for (const EditOp& op : alignment.ops) {
    switch (op.type) {
      case OpType::kMatch: ++cells_[{op.ref, op.ref}]; break;
      case OpType::kSubstitute: ++cells_[{op.ref, op.hyp}]; break;
      case OpType::kDelete: ++cells_[{op.ref, kEpsilon}]; break;
      case OpType::kInsert: ++cells_[{kEpsilon, op.hyp}]; break;
    }
  }
}

std::size_t ConfusionMatrix::count(char32_t ref, char32_t hyp) const {
  const auto it = cells_.find({ref, hyp});
  return it == cells_.end() ? 0 : it->second;
}

std::vector<char32_t> ConfusionMatrix::alphabet() const {
  std::set<char32_t> seen;
  for (const auto& [cell, _] : cells_) {
    seen.insert(cell.first);
    seen.insert(cell.second);
  }
  seen.insert(kEpsilon);  // kEpsilon sorts after every code point
  return {seen.begin(), seen.end()};
}

std::size_t ConfusionMatrix::RowSum(char32_t ref) const {
  std::size_t sum = 0;
  for (auto it = cells_.lower_bound({ref, 0});
       it != cells_.end() && it->first.first == ref; ++it)
    sum += it->second;
  return sum;
}

namespace {

std::string CsvField(char32_t c) {
  std::string label = c == kEpsilon ? "<eps>" : unicode::CharLabel(c);
  if (label.find_first_of(",\"\n") == std::string::npos) return label;
  std::string quoted = "\"";
  for (char ch : label) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

}  // namespace

std::string ConfusionMatrix::ToCsv() const {
  const auto labels = alphabet();
  std::string out = "ref\\hyp";
  for (char32_t c : labels) out += "," + CsvField(c);
  out += "\n";
  for (char32_t r : labels) {
    out += CsvField(r);
    for (char32_t h : labels) out += "," + std::to_string(count(r, h));
    out += "\n";
  }
  return out;
}

ConfusionMatrix BuildConfusion(std::span<const EditAlignment> alignments) {
  ConfusionMatrix m;
  for (const EditAlignment& a : alignments) m.Add(a);
  return m;
}

}  // namespace htrkit::metrics
