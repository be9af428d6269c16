// tests/support/oracles.h

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

// Reference implementations used only by tests. They are written
// independently of the library code and favour obviousness over speed.

#ifndef HTRKIT_TESTS_ORACLES_H_
#define HTRKIT_TESTS_ORACLES_H_

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "htrkit/image.h"

namespace htrkit::testing {

// Full quadratic Levenshtein table; returns the distance only.
inline std::size_t LevenshteinOracle(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return d[a.size()][b.size()];
}

// Tries every threshold and keeps the first one with the largest
// between-class variance, computed straight from the pixel list.
inline int OtsuOracle(const imaging::LineImage& img) {
  const auto px = img.pixels();
  double best = -1;
  int best_t = -1;
  for (int t = 0; t < 255; ++t) {
    double n0 = 0, n1 = 0, s0 = 0, s1 = 0;
    for (auto v : px) {
      if (v <= t) {
        n0 += 1;
        s0 += v;
      } else {
        n1 += 1;
        s1 += v;
      }
    }
    if (n0 == 0 || n1 == 0) continue;
    const double w0 = n0 / px.size(), w1 = n1 / px.size();
    const double diff = s0 / n0 - s1 / n1;
    const double var = w0 * w1 * diff * diff;
    if (var > best * (1 + 1e-12) + 1e-12) {
      best = var;
      best_t = t;
    }
  }
  return best_t;
}

// Binary morphology on ink sets. `offsets` are structuring element
// offsets relative to the anchor. Dilation is the Minkowski sum of the
// ink set with the element; erosion keeps p when every in-bounds p + b
// is ink.
using InkSet = std::vector<std::vector<bool>>;  // [y][x]

inline InkSet InkOf(const imaging::LineImage& img) {
  InkSet s(img.height(), std::vector<bool>(img.width(), false));
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) s[y][x] = img.at(x, y) == 0;
  return s;
}

inline InkSet DilateOracle(const InkSet& in,
                           const std::vector<std::pair<int, int>>& offsets) {
  const int h = static_cast<int>(in.size()), w = static_cast<int>(in[0].size());
  InkSet out(h, std::vector<bool>(w, false));
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!in[y][x]) continue;
      for (auto [dx, dy] : offsets) {
        const int tx = x + dx, ty = y + dy;
        if (tx >= 0 && ty >= 0 && tx < w && ty < h) out[ty][tx] = true;
      }
    }
  return out;
}

inline InkSet ErodeOracle(const InkSet& in,
                          const std::vector<std::pair<int, int>>& offsets) {
  const int h = static_cast<int>(in.size()), w = static_cast<int>(in[0].size());
  InkSet out(h, std::vector<bool>(w, false));
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      bool all = true;
      for (auto [dx, dy] : offsets) {
        const int tx = x + dx, ty = y + dy;
        if (tx >= 0 && ty >= 0 && tx < w && ty < h && !in[ty][tx]) all = false;
      }
      out[y][x] = all;
    }
  return out;
}

// Sentence vote by exhaustive counting: for each distinct string, count
// occurrences and total score; pick by (count, score, smallest string).
struct Ballot {
  std::string text;
  double score;
};

inline std::string VoteOracle(const std::vector<Ballot>& ballots) {
  std::string best;
  long best_count = -1;
  double best_score = 0;
  for (const auto& candidate : ballots) {
    long count = 0;
    std::vector<double> scores;
    for (const auto& b : ballots)
      if (b.text == candidate.text) {
        ++count;
        scores.push_back(b.score);
      }
    std::sort(scores.begin(), scores.end());
    double total = 0;
    for (double s : scores) total += s;
    const bool better =
        count > best_count ||
        (count == best_count &&
         (total > best_score || (total == best_score && candidate.text < best)));
    if (better) {
      best = candidate.text;
      best_count = count;
      best_score = total;
    }
  }
  return best;
}

// Plain Fisher-Yates over indices with the same bounded draws the
// library uses, written against the raw engine.
template <typename Engine>
std::vector<std::size_t> ShuffledIndices(std::size_t n, Engine& draw_below) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[draw_below(i)]);
  return idx;
}

}  // namespace htrkit::testing

#endif  // HTRKIT_TESTS_ORACLES_H_
