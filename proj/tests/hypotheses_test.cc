// tests/hypotheses_test.cc

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

#include "htrkit/hypotheses.h"

#include <fstream>

#include "doctest.h"
#include "fixtures.h"
#include "htrkit/error.h"

using namespace htrkit::ensemble;
using nlohmann::json;

namespace {

json Record() {
  return json::parse(R"({"line_id":"p_l1","model_id":"Elastic","hypotheses":[
      {"text":"Ferre sed","score":-0.2,"rank":1},
      {"text":"Ferre sed.","score":-1.5,"rank":2}]})");
}

}  // namespace

TEST_CASE("a well-formed record passes") {
  CHECK(ValidateRecord(Record()).empty());
  const auto s = SetFromJson(Record());
  CHECK(s.line_id == "p_l1");
  CHECK(s.hypotheses.size() == 2);
  CHECK(s.hypotheses[1].rank == 2);
  CHECK(ToJson(s) == Record());
}

TEST_CASE("schema violations are reported") {
  auto r = Record();
  r["hypotheses"][1]["rank"] = 3;
  CHECK_FALSE(ValidateRecord(r).empty());
  r = Record();
  r["hypotheses"][1]["score"] = 0.5;  // better than rank 1
  CHECK_FALSE(ValidateRecord(r).empty());
  r = Record();
  r["extra"] = 1;
  CHECK_FALSE(ValidateRecord(r).empty());
  r = Record();
  r["line_id"] = "";
  CHECK_FALSE(ValidateRecord(r).empty());
  r = Record();
  r["hypotheses"] = json::array();
  CHECK_FALSE(ValidateRecord(r).empty());
  r["error"] = "image unreadable";
  CHECK(ValidateRecord(r).empty());
  r = Record();
  for (int i = 3; i <= 6; ++i) r["hypotheses"].push_back({{"text", "x"}, {"score", -2.0 * i}, {"rank", i}});
  CHECK_FALSE(ValidateRecord(r).empty());
  CHECK(ValidateRecord(r, 6).empty());
  CHECK_THROWS_AS(SetFromJson(r), htrkit::Error);
}

TEST_CASE("files round trip and are checked line by line") {
  htrkit::testing::TempDir dir;
  std::vector<HypothesisSet> sets = {SetFromJson(Record())};
  sets.push_back({"p_l2", "Elastic", {}, std::string("decode failed")});
  WriteHypotheses(dir / "h.jsonl", sets);
  CHECK(ReadHypotheses(dir / "h.jsonl") == sets);
  const auto ok = CheckHypothesesFile(dir / "h.jsonl");
  CHECK(ok.records == 2);
  CHECK(ok.hypotheses == 2);
  CHECK(ok.problems.empty());

  std::ofstream(dir / "bad.jsonl") << Record().dump() << "\n{\"line_id\": 3}\nnot json\n"
                                   << Record().dump() << "\n";
  const auto bad = CheckHypothesesFile(dir / "bad.jsonl");
  CHECK(bad.problems.size() >= 3);  // schema, syntax, duplicate
  CHECK(bad.problems[0].rfind("line 2", 0) == 0);
  CHECK_THROWS_AS(ReadHypotheses(dir / "bad.jsonl"), htrkit::Error);
}

TEST_CASE("syntax errors carry a byte offset") {
  htrkit::testing::TempDir dir;
  std::ofstream(dir / "s.jsonl") << Record().dump() << "\n{\"line_id\": \n";
  try {
    ReadHypotheses(dir / "s.jsonl");
    FAIL("expected parse error");
  } catch (const htrkit::ParseError& e) {
    CHECK(e.offset() > Record().dump().size());
  }
}
