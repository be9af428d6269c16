// tests/unicode_test.cc

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

#include "htrkit/unicode.h"

#include "doctest.h"
#include "htrkit/error.h"

namespace u = htrkit::unicode;

TEST_CASE("decode and encode round trip multi-byte text") {
  const std::string s = "Zürich ſ 𝔄 ꝑ";
  const auto d = u::Decode(s);
  CHECK(d.size() == 12);
  CHECK(d[1] == U'ü');
  CHECK(u::Encode(d) == s);
}

TEST_CASE("invalid utf-8 is rejected") {
  CHECK_FALSE(u::IsValidUtf8("\xC3"));
  CHECK_FALSE(u::IsValidUtf8("\xED\xA0\x80"));  // surrogate
  CHECK_FALSE(u::IsValidUtf8("\xC0\xAF"));      // overlong
  CHECK_THROWS_AS(u::Decode("ab\xFF"), htrkit::Error);
  CHECK(u::IsValidUtf8(""));
}

TEST_CASE("nfc composes combining marks") {
  CHECK(u::Nfc("u\xCC\x88") == "\xC3\xBC");
  CHECK(u::Canonical("u\xCC\x88").size() == 1);
}

TEST_CASE("lowercase and trailing trim") {
  CHECK(u::Lowercase("HANC Levius") == "hanc levius");
  CHECK(u::Canonical("AB", true) == U"ab");
  CHECK(u::TrimTrailingSpace("moram. \t ") == "moram.");
  CHECK(u::TrimTrailingSpace("  x") == "  x");
  CHECK(u::TrimTrailingSpace("   ").empty());
}

TEST_CASE("character labels") {
  CHECK(u::CharLabel(U' ') == "space");
  CHECK(u::CharLabel(U'a') == "a");
  CHECK(u::CharLabel(U'\t') == "\\t");
  CHECK(u::CharLabel(0x01) == "U+0001");
}
