// tests/metrics_test.cc

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

#include <random>

#include "doctest.h"
#include "htrkit/error.h"
#include "htrkit/unicode.h"
#include "oracles.h"

using namespace htrkit::metrics;
using htrkit::testing::LevenshteinOracle;

namespace {

std::u32string RandomString(std::mt19937& rng, int alphabet, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), ch(0, alphabet - 1);
  std::u32string s(len(rng), U'a');
  for (auto& c : s) c = static_cast<char32_t>(U'a' + ch(rng));
  return s;
}

// Replays the ops and checks they turn ref into hyp with the stated counts.
void CheckAlignmentConsistent(const std::u32string& ref, const std::u32string& hyp,
                              const EditAlignment& a) {
  std::u32string r, h;
  std::size_t m = 0, s = 0, d = 0, i = 0;
  for (const auto& op : a.ops) {
    switch (op.type) {
      case OpType::kMatch:
        REQUIRE(op.ref == op.hyp);
        r += op.ref, h += op.hyp, ++m;
        break;
      case OpType::kSubstitute:
        REQUIRE(op.ref != op.hyp);
        r += op.ref, h += op.hyp, ++s;
        break;
      case OpType::kDelete:
        r += op.ref, ++d;
        break;
      case OpType::kInsert:
        h += op.hyp, ++i;
        break;
    }
  }
  CHECK(r == ref);
  CHECK(h == hyp);
  CHECK(m == a.matches);
  CHECK(s == a.substitutions);
  CHECK(d == a.deletions);
  CHECK(i == a.insertions);
  CHECK(a.matches + a.substitutions + a.deletions == a.n_ref);
}

}  // namespace

TEST_CASE("identical strings align as matches") {
  const auto a = Align("abc", "abc");
  CHECK(a.matches == 3);
  CHECK(a.cost() == 0);
  CHECK(Cer("abc", "abc") == 0.0);
}

TEST_CASE("kitten to sitting") {
  const auto a = Align("kitten", "sitting");
  CHECK(a.cost() == 3);
  CHECK(a.substitutions == 2);
  CHECK(a.insertions == 1);
  CHECK(a.deletions == 0);
  CHECK(Cer("kitten", "sitting") == doctest::Approx(0.5));
}

TEST_CASE("empty hypothesis and pure insertions") {
  const auto a = Align("abc", "");
  CHECK(a.deletions == 3);
  CHECK(a.cost() == 3);
  CHECK(Cer("ab", "abcd") == doctest::Approx(1.0));
  CHECK(Cer("a", "bcd") == doctest::Approx(3.0));  // CER can exceed 1
}

TEST_CASE("empty reference is an error") {
  CHECK_THROWS_AS(Cer("", "x"), htrkit::Error);
  CHECK_THROWS_AS(Cer("", ""), htrkit::Error);
  CHECK(Align("", "").cost() == 0);
}

TEST_CASE("tie-break prefers substitution over delete and insert") {
  // "mn" -> "nm": two substitutions and delete+insert both cost 2.
  const auto a = Align("mn", "nm");
  CHECK(a.substitutions == 2);
  CHECK(a.deletions == 0);
  CHECK(a.insertions == 0);
  // "ab" -> "b": the surviving b is matched, a deleted.
  const auto b = Align("ab", "b");
  REQUIRE(b.ops.size() == 2);
  CHECK(b.ops[0] == EditOp{OpType::kDelete, U'a', 0});
  CHECK(b.ops[1] == EditOp{OpType::kMatch, U'b', U'b'});
}

TEST_CASE("alignment cost equals an independent DP on random pairs") {
  std::mt19937 rng(7);
  for (int t = 0; t < 2000; ++t) {
    const auto r = RandomString(rng, 4, 12);
    const auto h = RandomString(rng, 4, 12);
    const auto a = Align(r, h);
    REQUIRE(a.cost() == LevenshteinOracle(r, h));
    CHECK(a.cost() <= r.size() + h.size());
    CheckAlignmentConsistent(r, h, a);
  }
}

TEST_CASE("utf-8 alignment normalizes and optionally lowercases") {
  CHECK(Align("u\xCC\x88", "\xC3\xBC").cost() == 0);
  CHECK(Align("Ferre", "ferre").cost() == 1);
  CHECK(Align("Ferre", "ferre", true).cost() == 0);
  CHECK(Cer("a b", "ab") == doctest::Approx(1.0 / 3));  // space counts
}

TEST_CASE("corpus cer is micro averaged") {
  std::vector<TextPair> perfect = {{"abc", "abc"}, {"de", "de"}};
  CHECK(CorpusCer(perfect) == 0.0);
  // (3 errors over 6) and (0 over 4) -> 3/10.
  std::vector<TextPair> pairs = {{"kitten", "sitting"}, {"abcd", "abcd"}};
  CHECK(CorpusCer(pairs) == doctest::Approx(0.3));
  CHECK(100 * CorpusCer(pairs) == doctest::Approx(30.0));
  CHECK_THROWS_AS(CorpusCer(std::vector<TextPair>{}), htrkit::Error);
  CHECK_THROWS_AS(CorpusCer(std::vector<TextPair>{{"", "a"}}), htrkit::Error);
}

TEST_CASE("char report on aa versus ab") {
  std::vector<EditAlignment> al = {Align("aa", "ab")};
  const auto r = BuildCharReport(al);
  const auto& a = r.chars.at(U'a');
  CHECK(a.tp == 1);
  CHECK(a.fn == 1);
  CHECK(a.fp == 0);
  CHECK(a.precision == doctest::Approx(1.0));
  CHECK(a.recall == doctest::Approx(0.5));
  CHECK(std::abs(a.f1 - 2.0 / 3.0) < 1e-9);
  const auto& b = r.chars.at(U'b');
  CHECK(b.tp == 0);
  CHECK(b.fp == 1);
  CHECK(b.f1 == 0.0);
  CHECK(r.accuracy == doctest::Approx(0.5));
  CHECK(r.macro_avg_f1 == doctest::Approx(1.0 / 3.0));
  // Only 'a' has reference support.
  CHECK(r.weighted_avg_f1 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("perfect corpus gives unit scores") {
  std::vector<EditAlignment> al;
  for (int i = 0; i < 5; ++i) al.push_back(Align("y", "y"));
  al.push_back(Align("hanc levius", "hanc levius"));
  const auto r = BuildCharReport(al);
  for (const auto& [c, s] : r.chars) {
    CHECK(s.precision == 1.0);
    CHECK(s.recall == 1.0);
    CHECK(s.f1 == 1.0);
  }
  CHECK(100 * r.chars.at(U'y').f1 == 100.0);
  CHECK(r.accuracy == 1.0);
  CHECK(r.macro_avg_f1 == 1.0);
  CHECK(r.weighted_avg_f1 == 1.0);
}

TEST_CASE("char report counts agree with alignment totals") {
  std::mt19937 rng(11);
  std::vector<EditAlignment> al;
  for (int t = 0; t < 200; ++t)
    al.push_back(Align(RandomString(rng, 6, 10) + U"x", RandomString(rng, 6, 10)));
  const auto r = BuildCharReport(al);
  std::size_t tp = 0, support = 0, n_ref = 0, matches = 0;
  double weighted = 0;
  for (const auto& [c, s] : r.chars) {
    tp += s.tp;
    support += s.support();
    weighted += s.f1 * s.support();
  }
  for (const auto& a : al) n_ref += a.n_ref, matches += a.matches;
  CHECK(tp == matches);
  CHECK(r.matches == matches);
  CHECK(support == n_ref);
  CHECK(r.weighted_avg_f1 == doctest::Approx(weighted / n_ref));
}

TEST_CASE("confusion cells") {
  ConfusionMatrix m;
  m.Add(Align("mn", "nm"));
  CHECK(m.count(U'm', U'n') == 1);
  CHECK(m.count(U'n', U'm') == 1);
  CHECK(m.count(U'm', U'm') == 0);

  ConfusionMatrix perfect;
  perfect.Add(Align("abca", "abca"));
  for (const auto& [cell, n] : perfect.cells()) CHECK(cell.first == cell.second);
  CHECK(perfect.count(U'a', U'a') == 2);

  ConfusionMatrix del;
  del.Add(Align("abc", ""));
  for (const auto& [cell, n] : del.cells()) CHECK(cell.second == kEpsilon);
  CHECK(del.RowSum(U'b') == 1);

  ConfusionMatrix ins;
  ins.Add(Align("a", "ab"));
  CHECK(ins.count(kEpsilon, U'b') == 1);
  CHECK(ins.alphabet().back() == kEpsilon);
}

TEST_CASE("confusion row sums equal reference counts") {
  std::mt19937 rng(3);
  for (int corpus = 0; corpus < 100; ++corpus) {
    std::vector<EditAlignment> al;
    std::map<char32_t, std::size_t> ref_counts;
    for (int i = 0; i < 10; ++i) {
      const auto r = RandomString(rng, 5, 8);
      for (char32_t c : r) ++ref_counts[c];
      al.push_back(Align(r, RandomString(rng, 5, 8)));
    }
    const auto m = BuildConfusion(al);
    for (const auto& [c, n] : ref_counts) REQUIRE(m.RowSum(c) == n);
  }
}

TEST_CASE("confusion csv layout") {
  ConfusionMatrix m;
  m.Add(Align("a,", "b"));
  const std::string csv = m.ToCsv();
  CHECK(csv.rfind("ref\\hyp,", 0) == 0);
  CHECK(csv.find("<eps>") != std::string::npos);
  CHECK(csv.find("\",\"") != std::string::npos);  // quoted comma label
}
