// include/htrkit/eval_report.h

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

#ifndef HTRKIT_EVAL_REPORT_H_
#define HTRKIT_EVAL_REPORT_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "htrkit/metrics.h"
#include "json.hpp"

namespace htrkit::metrics {

struct EvalOptions {
  bool lowercase = false;
  int jobs = 1;
  bool confusion = true;
};

// Corpus-level evaluation. Rates here are fractions; the JSON and text
// renderings scale CER, precision, recall, F1 and accuracy by 100.
struct EvalReport {
  std::string model;
  std::size_t n_lines = 0;
  std::size_t n_ref = 0;
  std::size_t matches = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  double cer = 0;
  bool lowercase = false;
  CharReport chars;
  std::optional<ConfusionMatrix> confusion;
  nlohmann::json config = nlohmann::json::object();
};

// Throws htrkit::Error for an empty corpus or empty reference.
EvalReport Evaluate(std::string model, std::span<const TextPair> pairs,
                    const EvalOptions& options = {});

nlohmann::json ToJson(const EvalReport& report);
// Needs at least "model" and "cer"; everything else is optional.
EvalReport ReportFromJson(const nlohmann::json& doc);
EvalReport LoadReport(const std::string& path);

// Problems found in a full report document; empty when valid.
std::vector<std::string> ValidateReportJson(const nlohmann::json& doc);

// Aligned-column text rendering.
std::string FormatText(const EvalReport& report);

}  // namespace htrkit::metrics

#endif  // HTRKIT_EVAL_REPORT_H_
