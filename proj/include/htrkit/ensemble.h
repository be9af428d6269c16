// include/htrkit/ensemble.h

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

#ifndef HTRKIT_ENSEMBLE_H_
#define HTRKIT_ENSEMBLE_H_

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "htrkit/eval_report.h"
#include "htrkit/hypotheses.h"
#include "json.hpp"

namespace htrkit::ensemble {

struct VoteOptions {
  // Experimental: a rank-r hypothesis casts 1/r votes instead of one.
  bool rank_weighted = false;
};

// Text used as the vote key: NFC with trailing whitespace removed.
std::string VoteKey(const std::string& text);

// Sentence-level majority vote over every hypothesis of every set. Exact
// (normalized) strings are the ballots. Ties: more votes, then higher summed
// score, then the lexicographically smallest string. Throws htrkit::Error
// when there is no hypothesis or the sets disagree on line_id.
std::string VoteSentence(std::span<const HypothesisSet> sets,
                         const VoteOptions& options = {});

// Experimental positional vote. Only hypotheses of the modal length take part
// (ties prefer the shorter length); at each position the most frequent
// character wins, ties going to the character of the best-scoring hypothesis.
std::string VoteCharacters(std::span<const HypothesisSet> sets);

enum class SelectionMetric { kWeightedF1, kMacroF1 };

// The k models with the highest validation F1, best first; equal scores are
// ordered by model id. Throws unless 1 <= k <= reports.size().
std::vector<std::string> SelectTopK(
    const std::map<std::string, metrics::CharReport>& validation_reports, int k,
    SelectionMetric metric = SelectionMetric::kWeightedF1);

enum class Mode { kFull, kTopK };
enum class MissingPolicy { kFail, kSkipModel };

struct EnsembleConfig {
  Mode mode = Mode::kFull;
  int k = 5;
  // Empty means every model present in the hypothesis input.
  std::vector<std::string> member_models;
  SelectionMetric selection_metric = SelectionMetric::kWeightedF1;
  MissingPolicy missing = MissingPolicy::kFail;
  VoteOptions vote;
  bool character_voting = false;  // experimental, off by default
  bool lowercase = false;
};

// JSON form, all keys optional:
//   {"mode": "TopK", "k": 5, "member_models": [...],
//    "selection_metric": "WeightedF1" | "MacroF1",
//    "missing_policy": "fail" | "skip-model",
//    "rank_weighted": false, "character_voting": false, "lowercase": false}
EnsembleConfig ConfigFromJson(const nlohmann::json& doc);
nlohmann::json ToJson(const EnsembleConfig& config);
EnsembleConfig LoadConfig(const std::string& path);

struct Reference {
  std::string line_id;
  std::string text;
};

struct EnsembleResult {
  std::vector<std::string> members;  // models that voted
  std::vector<std::pair<std::string, std::string>> winners;  // (line_id, text)
  metrics::EvalReport report;
  std::vector<std::string> warnings;
};

// Votes every reference line over the member models, then scores the
// winners. TopK mode picks its members from `validation_reports`.
EnsembleResult RunEnsemble(
    const EnsembleConfig& config, std::span<const HypothesisSet> all_sets,
    std::span<const Reference> references,
    const std::map<std::string, metrics::CharReport>& validation_reports = {},
    int jobs = 1);

}  // namespace htrkit::ensemble

#endif  // HTRKIT_ENSEMBLE_H_
