// include/htrkit/cli.h

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

#ifndef HTRKIT_CLI_H_
#define HTRKIT_CLI_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "htrkit/ensemble.h"
#include "htrkit/eval_report.h"
#include "htrkit/imaging.h"
#include "json.hpp"

namespace htrkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Parses argv, runs the subcommand and returns the process exit code:
// 0 success, 1 usage error, 2 data error.
int Run(int argc, const char* const* argv);

struct ExtractOptions {
  std::string xml_dir;
  std::string image_dir;
  std::string out_dir;
  bool keep_going = false;
  bool preprocess = true;
  imaging::PreprocessConfig preprocess_config;
  double overlap_threshold = 0.1;
  int jobs = 1;
};

struct ExtractSummary {
  std::size_t pages = 0;
  std::size_t lines = 0;
  std::size_t warnings = 0;
  std::size_t overlap_adjustments = 0;
};

// Writes out_dir/lines/<line_id>.png, manifest.jsonl, warnings.jsonl,
// overlaps.jsonl and run_config.json.
ExtractSummary Extract(const ExtractOptions& options);

struct AugmentOptions {
  std::string manifest;
  std::string spec_file;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::int64_t epoch = 0;
  std::optional<std::string> split;  // restrict to one split
  int jobs = 1;
};

struct AugmentSummary {
  std::size_t lines = 0;
  std::size_t applied = 0;
};

// Writes out_dir/<line_id>.png (untouched samples are byte copies),
// augment_log.jsonl, manifest.jsonl and run_config.json.
AugmentSummary Augment(const AugmentOptions& options);

struct PreviewOptions {
  std::string image;
  std::optional<std::string> spec_file;  // otherwise every kind's defaults
  std::string out_dir;
  std::uint64_t seed = 0;
  int samples = 4;
};

// One contact sheet per kind: the source on top, then `samples` variants.
std::vector<std::string> Preview(const PreviewOptions& options);

struct EvaluateOptions {
  std::string manifest;
  std::string hypotheses;
  std::optional<std::string> model;
  std::optional<std::string> split;
  bool lowercase = false;
  int jobs = 1;
};

// Rank-1 hypotheses of one model against the manifest transcriptions.
// Throws htrkit::Error naming any manifest line without a record.
metrics::EvalReport Evaluate(const EvaluateOptions& options);

struct EnsembleOptions {
  std::string config_file;
  std::string manifest;
  std::vector<std::string> hypotheses;
  std::vector<std::string> validation_reports;
  std::optional<std::string> split;
  int jobs = 1;
};

ensemble::EnsembleResult Ensemble(const EnsembleOptions& options);

struct ReportTables {
  std::string text;
  nlohmann::json json;
};

// Table-1-shaped CER ranking (ascending, ties by model name) plus a
// Table-2-shaped per-character F1 grid. `chars` limits the grid rows.
ReportTables BuildReport(const std::vector<metrics::EvalReport>& reports,
                         const std::optional<std::string>& chars = std::nullopt);

// Text lines used by `htrkit dataset fetch`.
std::string FetchInstructions();

}  // namespace htrkit::cli

#endif  // HTRKIT_CLI_H_
