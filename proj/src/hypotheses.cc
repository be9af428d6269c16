// src/hypotheses.cc

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

#include <cmath>
#include <fstream>
#include <set>
#include <type_traits>
#include <utility>

#include "htrkit/error.h"
#include "htrkit/unicode.h"

namespace htrkit::ensemble {

using nlohmann::json;

std::vector<std::string> ValidateRecord(const json& record, int beam_width) {
  std::vector<std::string> problems;
  if (!record.is_object()) return {"record is not a JSON object"};
  for (const auto& [key, _] : record.items())
    if (key != "line_id" && key != "model_id" && key != "hypotheses" &&
        key != "error")
      problems.push_back("unexpected key '" + key + "'");
  for (const char* key : {"line_id", "model_id"}) {
    const auto it = record.find(key);
    if (it == record.end() || !it->is_string() || it->get<std::string>().empty())
      problems.push_back(std::string("'") + key + "' must be a non-empty string");
  }
  const auto err = record.find("error");
  const bool has_error = err != record.end();
  if (has_error && !err->is_string())
    problems.push_back("'error' must be a string");
  const auto hyps = record.find("hypotheses");
  if (hyps == record.end() || !hyps->is_array()) {
    problems.push_back("'hypotheses' must be an array");
    return problems;
  }
  if (hyps->empty() && !has_error)
    problems.push_back("'hypotheses' is empty without an 'error'");
  if (static_cast<int>(hyps->size()) > beam_width)
    problems.push_back("more than " + std::to_string(beam_width) +
                       " hypotheses");
  double previous = INFINITY;
  int expected_rank = 1;
  for (const json& h : *hyps) {
    const std::string where = "hypothesis " + std::to_string(expected_rank);
    if (!h.is_object()) {
      problems.push_back(where + " is not an object");
      ++expected_rank;
      continue;
    }
    for (const auto& [key, _] : h.items())
      if (key != "text" && key != "score" && key != "rank")
        problems.push_back(where + ": unexpected key '" + key + "'");
    if (!h.contains("text") || !h["text"].is_string())
      problems.push_back(where + ": 'text' must be a string");
    else if (!unicode::IsValidUtf8(h["text"].get_ref<const std::string&>()))
      problems.push_back(where + ": 'text' is not valid UTF-8");
    if (!h.contains("rank") || !h["rank"].is_number_integer() ||
        h["rank"].get<long long>() != expected_rank)
      problems.push_back(where + ": 'rank' must be " +
                         std::to_string(expected_rank));
    if (!h.contains("score") || !h["score"].is_number() ||
        !std::isfinite(h["score"].get<double>())) {
      problems.push_back(where + ": 'score' must be a finite number");
    } else {
      const double score = h["score"].get<double>();
      if (score > previous)
        problems.push_back(where + ": score increases with rank");
      previous = score;
    }
    ++expected_rank;
  }
  return problems;
}

json ToJson(const HypothesisSet& set) {
  json hyps = json::array();
  for (const Hypothesis& h : set.hypotheses)
    hyps.push_back({{"text", h.text}, {"score", h.score}, {"rank", h.rank}});
  json out = {{"line_id", set.line_id},
              {"model_id", set.model_id},
              {"hypotheses", hyps}};
  if (set.error) out["error"] = *set.error;
  return out;
}

HypothesisSet SetFromJson(const json& record, int beam_width) {
  const auto problems = ValidateRecord(record, beam_width);
  if (!problems.empty()) {
    std::string msg = "invalid hypothesis record:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw Error(msg);
  }
  HypothesisSet set;
  set.line_id = record["line_id"].get<std::string>();
  set.model_id = record["model_id"].get<std::string>();
  if (record.contains("error")) set.error = record["error"].get<std::string>();
  for (const json& h : record["hypotheses"])
    set.hypotheses.push_back({h["text"].get<std::string>(),
                              h["score"].get<double>(), h["rank"].get<int>()});
  return set;
}

namespace {

// Calls on_record for each non-blank line. Syntax errors throw ParseError
// unless on_syntax_error is given, in which case they are handed to it.
template <typename OnRecord, typename OnSyntaxError = std::nullptr_t>
void ForEachRecord(const std::string& path, OnRecord&& on_record,
                   OnSyntaxError&& on_syntax_error = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      const std::size_t at = line_offset + (e.byte > 0 ? e.byte - 1 : 0);
      if constexpr (std::is_same_v<std::decay_t<OnSyntaxError>, std::nullptr_t>) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what(), at);
      } else {
        on_syntax_error(line_no, at, e.what());
        continue;
      }
    }
    on_record(line_no, record);
  }
}

}  // namespace

std::vector<HypothesisSet> ReadHypotheses(const std::string& path,
                                          int beam_width) {
  std::vector<HypothesisSet> sets;
  std::set<std::pair<std::string, std::string>> seen;
  ForEachRecord(path, [&](std::size_t line_no, const json& record) {
    try {
      sets.push_back(SetFromJson(record, beam_width));
    } catch (const Error& e) {
      throw Error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!seen.emplace(sets.back().line_id, sets.back().model_id).second)
      throw Error(path + ":" + std::to_string(line_no) + ": duplicate record for line '" +
                  sets.back().line_id + "' model '" + sets.back().model_id + "'");
  });
  return sets;
}

void WriteHypotheses(const std::string& path,
                     const std::vector<HypothesisSet>& sets) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  for (const HypothesisSet& set : sets) out << ToJson(set).dump() << '\n';
  if (!out) throw Error("failed writing " + path);
}

FileCheck CheckHypothesesFile(const std::string& path, int beam_width) {
  FileCheck check;
  std::set<std::pair<std::string, std::string>> seen;
  ForEachRecord(path, [&](std::size_t line_no, const json& record) {
    ++check.records;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    for (const auto& p : ValidateRecord(record, beam_width))
      check.problems.push_back(where + p);
    if (record.is_object() && record.contains("hypotheses") &&
        record["hypotheses"].is_array())
      check.hypotheses += record["hypotheses"].size();
    if (record.is_object() && record.contains("line_id") &&
        record.contains("model_id") && record["line_id"].is_string() &&
        record["model_id"].is_string() &&
        !seen.emplace(record["line_id"].get<std::string>(),
                      record["model_id"].get<std::string>())
             .second)
      check.problems.push_back(where + "duplicate (line_id, model_id)");
  }, [&](std::size_t line_no, std::size_t offset, const std::string& what) {
    ++check.records;
    check.problems.push_back("line " + std::to_string(line_no) + ": invalid JSON at byte " +
                             std::to_string(offset) + ": " + what);
  });
  return check;
}

}  // namespace htrkit::ensemble
