// src/eval_report.cc

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

#include "htrkit/eval_report.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "htrkit/error.h"
#include "htrkit/parallel.h"
#include "htrkit/unicode.h"

namespace htrkit::metrics {

using nlohmann::json;

EvalReport Evaluate(std::string model, std::span<const TextPair> pairs,
                    const EvalOptions& options) {
  if (pairs.empty()) throw Error("cannot evaluate an empty corpus");
  std::vector<EditAlignment> alignments(pairs.size());
  ParallelFor(pairs.size(), options.jobs, [&](std::size_t i) {
    alignments[i] = Align(pairs[i].first, pairs[i].second, options.lowercase);
  });
  EvalReport report;
  report.model = std::move(model);
  report.lowercase = options.lowercase;
  report.n_lines = pairs.size();
  for (std::size_t i = 0; i < alignments.size(); ++i) {
    const EditAlignment& a = alignments[i];
    if (a.n_ref == 0)
      throw Error("empty reference transcription at corpus index " +
                  std::to_string(i));
    report.n_ref += a.n_ref;
    report.matches += a.matches;
    report.substitutions += a.substitutions;
    report.deletions += a.deletions;
    report.insertions += a.insertions;
  }
  report.cer = CorpusCer(alignments);
  report.chars = BuildCharReport(alignments);
  if (options.confusion) report.confusion = BuildConfusion(alignments);
  return report;
}

json ToJson(const EvalReport& r) {
  json chars = json::array();
  for (const auto& [c, s] : r.chars.chars) {
    chars.push_back({{"char", unicode::Encode(c)},
                     {"label", unicode::CharLabel(c)},
                     {"tp", s.tp},
                     {"fp", s.fp},
                     {"fn", s.fn},
                     {"support", s.support()},
                     {"precision", 100 * s.precision},
                     {"recall", 100 * s.recall},
                     {"f1", 100 * s.f1}});
  }
  return {{"model", r.model},
          {"n_lines", r.n_lines},
          {"n_ref_chars", r.n_ref},
          {"matches", r.matches},
          {"substitutions", r.substitutions},
          {"deletions", r.deletions},
          {"insertions", r.insertions},
          {"cer", 100 * r.cer},
          {"accuracy", 100 * r.chars.accuracy},
          {"macro_avg_f1", 100 * r.chars.macro_avg_f1},
          {"weighted_avg_f1", 100 * r.chars.weighted_avg_f1},
          {"lowercase", r.lowercase},
          {"characters", chars},
          {"config", r.config}};
}

namespace {

template <typename T>
T Get(const json& doc, const char* key, T fallback) {
  const auto it = doc.find(key);
  return it == doc.end() ? fallback : it->get<T>();
}

}  // namespace

EvalReport ReportFromJson(const json& doc) {
  if (!doc.is_object()) throw Error("eval report must be a JSON object");
  if (!doc.contains("model") || !doc["model"].is_string())
    throw Error("eval report needs a string 'model'");
  if (!doc.contains("cer") || !doc["cer"].is_number())
    throw Error("eval report needs a numeric 'cer'");
  try {
    EvalReport r;
    r.model = doc["model"].get<std::string>();
    r.cer = doc["cer"].get<double>() / 100;
    r.n_lines = Get<std::size_t>(doc, "n_lines", 0);
    r.n_ref = Get<std::size_t>(doc, "n_ref_chars", 0);
    r.matches = Get<std::size_t>(doc, "matches", 0);
    r.substitutions = Get<std::size_t>(doc, "substitutions", 0);
    r.deletions = Get<std::size_t>(doc, "deletions", 0);
    r.insertions = Get<std::size_t>(doc, "insertions", 0);
    r.lowercase = Get<bool>(doc, "lowercase", false);
    r.chars.n_ref = r.n_ref;
    r.chars.matches = r.matches;
    r.chars.accuracy = Get<double>(doc, "accuracy", 0) / 100;
    r.chars.macro_avg_f1 = Get<double>(doc, "macro_avg_f1", 0) / 100;
    r.chars.weighted_avg_f1 = Get<double>(doc, "weighted_avg_f1", 0) / 100;
    if (const auto it = doc.find("characters"); it != doc.end()) {
      for (const json& entry : *it) {
        const std::u32string c =
            unicode::Decode(entry.at("char").get<std::string>());
        if (c.size() != 1)
          throw Error("character entry must hold exactly one code point");
        CharStats s;
        s.tp = Get<std::size_t>(entry, "tp", 0);
        s.fp = Get<std::size_t>(entry, "fp", 0);
        s.fn = Get<std::size_t>(entry, "fn", 0);
        s.precision = Get<double>(entry, "precision", 0) / 100;
        s.recall = Get<double>(entry, "recall", 0) / 100;
        s.f1 = Get<double>(entry, "f1", 0) / 100;
        r.chars.chars[c[0]] = s;
      }
    }
    if (const auto it = doc.find("config"); it != doc.end()) r.config = *it;
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed eval report: ") + e.what());
  }
}

EvalReport LoadReport(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return ReportFromJson(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::vector<std::string> ValidateReportJson(const json& doc) {
  std::vector<std::string> problems;
  if (!doc.is_object()) return {"report is not a JSON object"};
  auto need = [&](const char* key, bool (json::*is)() const noexcept) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
      problems.push_back(std::string("missing '") + key + "'");
      return false;
    }
    if (!((*it).*is)()) {
      problems.push_back(std::string("'") + key + "' has the wrong type");
      return false;
    }
    return true;
  };
  need("model", &json::is_string);
  for (const char* key : {"n_lines", "n_ref_chars", "matches", "substitutions",
                          "deletions", "insertions"})
    need(key, &json::is_number_unsigned);
  for (const char* key : {"cer", "accuracy", "macro_avg_f1", "weighted_avg_f1"})
    if (need(key, &json::is_number) && doc[key].get<double>() < 0)
      problems.push_back(std::string("'") + key + "' is negative");
  need("lowercase", &json::is_boolean);
  need("config", &json::is_object);
  if (need("characters", &json::is_array)) {
    for (const json& entry : doc["characters"]) {
      if (!entry.is_object() || !entry.contains("char") ||
          !entry["char"].is_string()) {
        problems.push_back("character entry without 'char'");
        continue;
      }
      for (const char* key : {"tp", "fp", "fn", "support"})
        if (!entry.contains(key) || !entry[key].is_number_unsigned())
          problems.push_back("character entry lacks count '" +
                             std::string(key) + "'");
      for (const char* key : {"precision", "recall", "f1"})
        if (!entry.contains(key) || !entry[key].is_number() ||
            entry[key].get<double>() < 0 || entry[key].get<double>() > 100)
          problems.push_back("character entry has bad '" + std::string(key) +
                             "'");
    }
  }
  if (problems.empty()) {
    const auto n = doc["n_ref_chars"].get<std::size_t>();
    if (doc["matches"].get<std::size_t>() +
            doc["substitutions"].get<std::size_t>() +
            doc["deletions"].get<std::size_t>() != n)
      problems.push_back("matches + substitutions + deletions != n_ref_chars");
    if (n > 0) {
      const double edits = static_cast<double>(
          doc["substitutions"].get<std::size_t>() +
          doc["deletions"].get<std::size_t>() +
          doc["insertions"].get<std::size_t>());
      if (std::fabs(100 * edits / n - doc["cer"].get<double>()) > 1e-6)
        problems.push_back("cer disagrees with edit counts");
    }
  }
  return problems;
}

std::string FormatText(const EvalReport& r) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "model            %s\n", r.model.c_str());
  out += line;
  std::snprintf(line, sizeof(line),
                "lines            %zu\nref chars        %zu\n"
                "S / D / I        %zu / %zu / %zu\n",
                r.n_lines, r.n_ref, r.substitutions, r.deletions, r.insertions);
  out += line;
  std::snprintf(line, sizeof(line),
                "CER              %.2f\naccuracy         %.2f  (matches / ref chars)\n"
                "macro avg F1     %.2f\nweighted avg F1  %.2f\n\n",
                100 * r.cer, 100 * r.chars.accuracy, 100 * r.chars.macro_avg_f1,
                100 * r.chars.weighted_avg_f1);
  out += line;
  std::snprintf(line, sizeof(line), "%-10s %8s %8s %8s %8s %8s %8s %8s\n",
                "char", "support", "tp", "fp", "fn", "P", "R", "F1");
  out += line;
  for (const auto& [c, s] : r.chars.chars) {
    const std::string label = unicode::CharLabel(c);
    // Pad by code points, not bytes, so non-ASCII labels stay aligned.
    const std::size_t width = unicode::Decode(label).size();
    out += label + std::string(width < 10 ? 10 - width : 1, ' ');
    std::snprintf(line, sizeof(line), " %8zu %8zu %8zu %8zu %8.2f %8.2f %8.2f\n",
                  s.support(), s.tp, s.fp, s.fn, 100 * s.precision,
                  100 * s.recall, 100 * s.f1);
    out += line;
  }
  return out;
}

}  // namespace htrkit::metrics
