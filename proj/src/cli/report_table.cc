// src/cli/report_table.cc

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

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "htrkit/cli.h"
#include "htrkit/error.h"
#include "htrkit/unicode.h"

namespace htrkit::cli {

using nlohmann::json;

namespace {

// Width in code points, for padding UTF-8 labels.
std::size_t DisplayWidth(const std::string& s) {
  return unicode::Decode(s).size();
}

std::string PadRight(const std::string& s, std::size_t width) {
  const std::size_t w = DisplayWidth(s);
  return w >= width ? s : s + std::string(width - w, ' ');
}

std::string PadLeft(const std::string& s, std::size_t width) {
  const std::size_t w = DisplayWidth(s);
  return w >= width ? s : std::string(width - w, ' ') + s;
}

}  // namespace

ReportTables BuildReport(const std::vector<metrics::EvalReport>& reports,
                         const std::optional<std::string>& chars) {
  if (reports.empty()) throw Error("report needs at least one eval report");
  std::vector<const metrics::EvalReport*> order;
  for (const auto& r : reports) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    const double ca = std::round(a->cer * 1e8), cb = std::round(b->cer * 1e8);
    return ca != cb ? ca < cb : a->model < b->model;
  });

  ReportTables out;
  std::size_t name_w = 5;
  for (const auto* r : order) name_w = std::max(name_w, DisplayWidth(r->model));

  std::string text = "CER by model (ascending)\n";
  text += fmt::format("{:>4}  {}  {:>8}\n", "Rank", PadRight("Model", name_w), "CER");
  json ranking = json::array();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::string cer = fmt::format("{:.2f}", 100 * order[i]->cer);
    text += fmt::format("{:>4}  {}  {:>8}\n", i + 1, PadRight(order[i]->model, name_w), cer);
    ranking.push_back({{"rank", i + 1},
                       {"model", order[i]->model},
                       {"cer", 100 * order[i]->cer},
                       {"cer_text", cer}});
  }

  std::set<char32_t> rows;
  if (chars) {
    for (char32_t c : unicode::Decode(*chars)) rows.insert(c);
  } else {
    for (const auto* r : order)
      for (const auto& [c, _] : r->chars.chars) rows.insert(c);
  }

  json grid = json::array();
  if (!rows.empty()) {
    std::size_t col_w = 8;
    for (const auto* r : order) col_w = std::max(col_w, DisplayWidth(r->model));
    const std::size_t label_w = 12;
    text += "\nPer-character F1 (x100)\n" + PadRight("Character", label_w);
    for (const auto* r : order) text += "  " + PadLeft(r->model, col_w);
    text += "\n";
    for (char32_t c : rows) {
      const std::string label = unicode::CharLabel(c);
      text += PadRight(label, label_w);
      json row = {{"char", unicode::Encode(c)}, {"label", label}};
      json values = json::object();
      for (const auto* r : order) {
        const auto it = r->chars.chars.find(c);
        if (it == r->chars.chars.end()) {
          text += "  " + PadLeft("-", col_w);
          values[r->model] = nullptr;
        } else {
          text += "  " + PadLeft(fmt::format("{:.2f}", 100 * it->second.f1), col_w);
          values[r->model] = 100 * it->second.f1;
        }
      }
      row["f1"] = values;
      grid.push_back(row);
      text += "\n";
    }
    auto summary = [&](const std::string& name, auto pick) {
      text += PadRight(name, label_w);
      for (const auto* r : order)
        text += "  " + PadLeft(fmt::format("{:.2f}", 100 * pick(*r)), col_w);
      text += "\n";
    };
    summary("Accuracy", [](const metrics::EvalReport& r) { return r.chars.accuracy; });
    summary("Macro Avg", [](const metrics::EvalReport& r) { return r.chars.macro_avg_f1; });
    summary("Weighted Avg",
            [](const metrics::EvalReport& r) { return r.chars.weighted_avg_f1; });
  }

  json summaries = json::array();
  for (const auto* r : order)
    summaries.push_back({{"model", r->model},
                         {"accuracy", 100 * r->chars.accuracy},
                         {"macro_avg_f1", 100 * r->chars.macro_avg_f1},
                         {"weighted_avg_f1", 100 * r->chars.weighted_avg_f1}});
  out.text = std::move(text);
  out.json = {{"ranking", ranking}, {"characters", grid}, {"summary", summaries}};
  return out;
}

}  // namespace htrkit::cli
