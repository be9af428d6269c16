// src/ensemble.cc

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

#include "htrkit/ensemble.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

#include "htrkit/error.h"
#include "htrkit/parallel.h"
#include "htrkit/unicode.h"

namespace htrkit::ensemble {

using nlohmann::json;

namespace {

// Sums in sorted order so the total does not depend on input order.
double StableSum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0);
}

struct Ballot {
  std::vector<double> weights;
  std::vector<double> scores;
};

void CheckSameLine(std::span<const HypothesisSet> sets) {
  for (const HypothesisSet& s : sets)
    if (s.line_id != sets.front().line_id)
      throw Error("hypothesis sets for different lines ('" +
                  sets.front().line_id + "', '" + s.line_id + "') in one vote");
}

}  // namespace

std::string VoteKey(const std::string& text) {
  return unicode::TrimTrailingSpace(unicode::Nfc(text));
}

std::string VoteSentence(std::span<const HypothesisSet> sets,
                         const VoteOptions& options) {
  CheckSameLine(sets);
  std::map<std::string, Ballot> ballots;
  for (const HypothesisSet& set : sets) {
    for (const Hypothesis& h : set.hypotheses) {
      Ballot& b = ballots[VoteKey(h.text)];
      b.weights.push_back(options.rank_weighted ? 1.0 / std::max(1, h.rank) : 1.0);
      b.scores.push_back(h.score);
    }
  }
  if (ballots.empty()) throw Error("no hypotheses to vote on");

  const std::string* best = nullptr;
  double best_votes = 0, best_score = 0;
  // std::map iterates keys in ascending order, so strict comparisons keep
  // the lexicographically smallest string on a full tie.
  for (const auto& [key, ballot] : ballots) {
    const double votes = StableSum(ballot.weights);
    const double score = StableSum(ballot.scores);
    if (best == nullptr || votes > best_votes ||
        (votes == best_votes && score > best_score)) {
      best = &key;
      best_votes = votes;
      best_score = score;
    }
  }
  return *best;
}

std::string VoteCharacters(std::span<const HypothesisSet> sets) {
  CheckSameLine(sets);
  struct Candidate {
    std::u32string text;
    double score;
  };
  std::vector<Candidate> all;
  for (const HypothesisSet& set : sets)
    for (const Hypothesis& h : set.hypotheses)
      all.push_back({unicode::Decode(VoteKey(h.text)), h.score});
  if (all.empty()) throw Error("no hypotheses to vote on");

  std::map<std::size_t, std::size_t> length_counts;
  for (const Candidate& c : all) ++length_counts[c.text.size()];
  std::size_t modal = 0, modal_count = 0;
  for (const auto& [len, count] : length_counts)
    if (count > modal_count) {
      modal = len;
      modal_count = count;
    }

  std::vector<Candidate> voters;
  for (const Candidate& c : all)
    if (c.text.size() == modal) voters.push_back(c);
  std::sort(voters.begin(), voters.end(), [](const auto& a, const auto& b) {
    return a.score != b.score ? a.score > b.score : a.text < b.text;
  });

  std::u32string out;
  for (std::size_t pos = 0; pos < modal; ++pos) {
    std::map<char32_t, std::size_t> counts;
    for (const Candidate& c : voters) ++counts[c.text[pos]];
    std::size_t top = 0;
    for (const auto& [_, n] : counts) top = std::max(top, n);
    for (const Candidate& c : voters)
      if (counts[c.text[pos]] == top) {
        out.push_back(c.text[pos]);
        break;
      }
  }
  return unicode::Encode(out);
}

std::vector<std::string> SelectTopK(
    const std::map<std::string, metrics::CharReport>& reports, int k,
    SelectionMetric metric) {
  if (k < 1 || static_cast<std::size_t>(k) > reports.size())
    throw Error("k = " + std::to_string(k) + " outside [1, " +
                std::to_string(reports.size()) + "]");
  std::vector<std::pair<std::string, double>> ranked;
  for (const auto& [model, report] : reports)
    ranked.emplace_back(model, metric == SelectionMetric::kWeightedF1
                                   ? report.weighted_avg_f1
                                   : report.macro_avg_f1);
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  std::vector<std::string> out;
  for (int i = 0; i < k; ++i) out.push_back(ranked[i].first);
  return out;
}

EnsembleConfig ConfigFromJson(const json& doc) {
  if (!doc.is_object()) throw Error("ensemble config must be a JSON object");
  static const std::set<std::string> kKeys = {
      "mode", "k", "member_models", "selection_metric", "missing_policy",
      "rank_weighted", "character_voting", "lowercase"};
  for (const auto& [key, _] : doc.items())
    if (!kKeys.contains(key))
      throw Error("unknown ensemble config field '" + key + "'");
  EnsembleConfig c;
  try {
    if (doc.contains("mode")) {
      const auto mode = doc["mode"].get<std::string>();
      if (mode == "Full") c.mode = Mode::kFull;
      else if (mode == "TopK") c.mode = Mode::kTopK;
      else throw Error("mode must be \"Full\" or \"TopK\"");
    }
    if (doc.contains("k")) c.k = doc["k"].get<int>();
    if (doc.contains("member_models"))
      c.member_models = doc["member_models"].get<std::vector<std::string>>();
    if (doc.contains("selection_metric")) {
      const auto m = doc["selection_metric"].get<std::string>();
      if (m == "WeightedF1") c.selection_metric = SelectionMetric::kWeightedF1;
      else if (m == "MacroF1") c.selection_metric = SelectionMetric::kMacroF1;
      else throw Error("selection_metric must be \"WeightedF1\" or \"MacroF1\"");
    }
    if (doc.contains("missing_policy")) {
      const auto p = doc["missing_policy"].get<std::string>();
      if (p == "fail") c.missing = MissingPolicy::kFail;
      else if (p == "skip-model") c.missing = MissingPolicy::kSkipModel;
      else throw Error("missing_policy must be \"fail\" or \"skip-model\"");
    }
    if (doc.contains("rank_weighted"))
      c.vote.rank_weighted = doc["rank_weighted"].get<bool>();
    if (doc.contains("character_voting"))
      c.character_voting = doc["character_voting"].get<bool>();
    if (doc.contains("lowercase")) c.lowercase = doc["lowercase"].get<bool>();
  } catch (const json::exception& e) {
    throw Error(std::string("malformed ensemble config: ") + e.what());
  }
  if (c.mode == Mode::kTopK) {
    if (c.k < 1) throw Error("TopK needs k >= 1");
    if (!c.member_models.empty() &&
        static_cast<std::size_t>(c.k) > c.member_models.size())
      throw Error("TopK needs k <= number of member models");
  }
  return c;
}

json ToJson(const EnsembleConfig& c) {
  return {{"mode", c.mode == Mode::kFull ? "Full" : "TopK"},
          {"k", c.k},
          {"member_models", c.member_models},
          {"selection_metric", c.selection_metric == SelectionMetric::kWeightedF1
                                   ? "WeightedF1"
                                   : "MacroF1"},
          {"missing_policy",
           c.missing == MissingPolicy::kFail ? "fail" : "skip-model"},
          {"rank_weighted", c.vote.rank_weighted},
          {"character_voting", c.character_voting},
          {"lowercase", c.lowercase}};
}

EnsembleConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return ConfigFromJson(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  }
}

EnsembleResult RunEnsemble(
    const EnsembleConfig& config, std::span<const HypothesisSet> all_sets,
    std::span<const Reference> references,
    const std::map<std::string, metrics::CharReport>& validation_reports,
    int jobs) {
  std::map<std::pair<std::string, std::string>, const HypothesisSet*> index;
  std::set<std::string> present_models;
  for (const HypothesisSet& s : all_sets) {
    if (!index.emplace(std::make_pair(s.line_id, s.model_id), &s).second)
      throw Error("duplicate hypotheses for line '" + s.line_id + "' model '" +
                  s.model_id + "'");
    present_models.insert(s.model_id);
  }

  EnsembleResult result;
  std::vector<std::string> candidates =
      config.member_models.empty()
          ? std::vector<std::string>(present_models.begin(), present_models.end())
          : config.member_models;
  if (candidates.empty()) throw Error("ensemble has no member models");
  if (config.mode == Mode::kFull) {
    result.members = candidates;
  } else {
    if (static_cast<std::size_t>(config.k) > candidates.size() || config.k < 1)
      throw Error("TopK needs 1 <= k <= number of member models");
    std::map<std::string, metrics::CharReport> pool;
    for (const std::string& m : candidates) {
      const auto it = validation_reports.find(m);
      if (it == validation_reports.end())
        throw Error("TopK selection needs a validation report for model '" + m + "'");
      pool.emplace(m, it->second);
    }
    result.members = SelectTopK(pool, config.k, config.selection_metric);
  }

  std::vector<std::vector<HypothesisSet>> per_line(references.size());
  std::vector<std::vector<std::string>> line_warnings(references.size());
  for (std::size_t i = 0; i < references.size(); ++i) {
    const std::string& line_id = references[i].line_id;
    for (const std::string& model : result.members) {
      const auto it = index.find({line_id, model});
      const bool usable = it != index.end() && !it->second->hypotheses.empty();
      if (usable) {
        per_line[i].push_back(*it->second);
        continue;
      }
      if (config.missing == MissingPolicy::kFail)
        throw Error("line '" + line_id + "': no hypotheses from model '" +
                    model + "'");
      line_warnings[i].push_back("line '" + line_id + "': model '" + model +
                                 "' skipped (no hypotheses)");
    }
    if (per_line[i].empty())
      throw Error("line '" + line_id + "': no member model produced hypotheses");
  }

  std::vector<std::string> voted(references.size());
  ParallelFor(references.size(), jobs, [&](std::size_t i) {
    voted[i] = config.character_voting ? VoteCharacters(per_line[i])
                                       : VoteSentence(per_line[i], config.vote);
  });

  std::vector<metrics::TextPair> pairs;
  pairs.reserve(references.size());
  for (std::size_t i = 0; i < references.size(); ++i) {
    result.winners.emplace_back(references[i].line_id, voted[i]);
    pairs.emplace_back(references[i].text, voted[i]);
    for (auto& w : line_warnings[i]) result.warnings.push_back(std::move(w));
  }
  metrics::EvalOptions eval_options;
  eval_options.lowercase = config.lowercase;
  eval_options.jobs = jobs;
  result.report = metrics::Evaluate(
      config.mode == Mode::kFull ? "Full Voting"
                                 : "Top-" + std::to_string(config.k) + " Voting",
      pairs, eval_options);
  result.report.config = ToJson(config);
  result.report.config["resolved_members"] = result.members;
  return result;
}

}  // namespace htrkit::ensemble
