// src/cli/commands.cc

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
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "htrkit/augment.h"
#include "htrkit/augment_config.h"
#include "htrkit/cli.h"
#include "htrkit/dataset.h"
#include "htrkit/error.h"
#include "htrkit/hypotheses.h"
#include "htrkit/image_io.h"
#include "htrkit/pagexml.h"
#include "htrkit/parallel.h"

namespace htrkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kVersion = "0.1.0";

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

void WriteJsonl(const fs::path& path, const std::vector<json>& records) {
  std::string text;
  for (const auto& r : records) text += r.dump() + "\n";
  WriteText(path, text);
}

void WriteRunConfig(const fs::path& path, json config) {
  config["htrkit_version"] = kVersion;
  WriteText(path, config.dump(2) + "\n");
}

json RectJson(const pagexml::Rect& r) { return {r.x0, r.y0, r.x1, r.y1}; }

void MakeDirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
}

// Manifest image paths are relative to the manifest's directory.
std::string ResolveImage(const std::string& manifest_path, const std::string& image) {
  const fs::path p(image);
  if (p.is_absolute()) return image;
  return (fs::path(manifest_path).parent_path() / p).string();
}

std::optional<dataset::Split> SplitFilter(const std::optional<std::string>& name) {
  if (!name || *name == "all") return std::nullopt;
  return dataset::ParseSplit(*name);
}

std::vector<dataset::ManifestEntry> SelectEntries(const dataset::Manifest& manifest,
                                                  const std::optional<std::string>& split) {
  const auto want = SplitFilter(split);
  std::vector<dataset::ManifestEntry> out;
  for (const auto& e : manifest.entries)
    if (!want || e.split == *want) out.push_back(e);
  if (out.empty()) throw Error("no manifest entries selected");
  return out;
}

std::string ReadFileBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path FindPageImage(const fs::path& image_dir, const pagexml::PageDocument& page) {
  std::vector<fs::path> candidates;
  if (!page.image_filename.empty()) {
    candidates.push_back(image_dir / page.image_filename);
    candidates.push_back(image_dir / fs::path(page.image_filename).filename());
  }
  for (const char* ext : {".png", ".jpg", ".jpeg"})
    candidates.push_back(image_dir / (page.page_id + ext));
  for (const auto& c : candidates)
    if (fs::is_regular_file(c)) return c;
  throw Error("no image found for page '" + page.page_id + "' (imageFilename '" +
              page.image_filename + "')");
}

json PreprocessJson(bool enabled, const imaging::PreprocessConfig& c) {
  return {{"enabled", enabled},
          {"target_height", c.target_height},
          {"max_width", c.max_width ? json(*c.max_width) : json(nullptr)},
          {"binarize", c.binarize},
          {"pad_value", c.pad_value}};
}

}  // namespace

ExtractSummary Extract(const ExtractOptions& o) {
  if (o.preprocess) imaging::Validate(o.preprocess_config);
  if (!fs::is_directory(o.xml_dir)) throw Error("not a directory: " + o.xml_dir);
  std::vector<fs::path> xml_files;
  for (const auto& entry : fs::directory_iterator(o.xml_dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".xml") xml_files.push_back(entry.path());
  }
  if (xml_files.empty()) throw Error("no PAGE-XML files in " + o.xml_dir);
  std::sort(xml_files.begin(), xml_files.end());

  const fs::path out_dir(o.out_dir);
  MakeDirs(out_dir / "lines");

  std::vector<json> warnings;
  std::vector<json> overlaps;
  std::vector<pagexml::PageDocument> kept_pages;
  auto warn = [&](const std::string& source, const std::string& page_id,
                  const std::string& message) {
    warnings.push_back({{"source", source}, {"page_id", page_id}, {"message", message}});
  };

  for (const auto& xml_path : xml_files) {
    const std::string source = xml_path.filename().string();
    pagexml::PageDocument page;
    imaging::LineImage image(1, 1);
    try {
      page = pagexml::ReadPageFile(xml_path.string());
      image = imaging::ReadImage(FindPageImage(o.image_dir, page).string());
    } catch (const Error& e) {
      if (!o.keep_going) throw Error(source + ": " + e.what());
      warn(source, page.page_id, e.what());
      continue;
    }
    for (const auto& w : page.warnings) warn(source, page.page_id, w);
    if (image.width() != page.image_width || image.height() != page.image_height)
      warn(source, page.page_id,
           fmt::format("image is {}x{} but PAGE-XML declares {}x{}", image.width(),
                       image.height(), page.image_width, page.image_height));

    auto resolved = pagexml::ResolveOverlaps(page, {o.overlap_threshold});
    for (const auto& adj : resolved.report)
      overlaps.push_back({{"page_id", page.page_id},
                          {"line_id", dataset::ManifestLineId(page.page_id, adj.line_id)},
                          {"partner_id", dataset::ManifestLineId(page.page_id, adj.partner_id)},
                          {"before", RectJson(adj.before)},
                          {"after", RectJson(adj.after)}});

    const auto& lines = resolved.page.lines;
    std::vector<std::string> failures(lines.size());
    ParallelFor(lines.size(), o.jobs, [&](std::size_t i) {
      const auto& line = lines[i];
      if (!line.annotated) return;
      try {
        const auto rect = pagexml::CropRect(line, image.width(), image.height());
        auto crop = imaging::Crop(image, rect);
        if (o.preprocess) crop = imaging::Preprocess(crop, o.preprocess_config);
        const std::string id = dataset::ManifestLineId(page.page_id, line.line_id);
        imaging::WritePng((out_dir / "lines" / (id + ".png")).string(), crop);
      } catch (const Error& e) {
        failures[i] = e.what();
      }
    });
    pagexml::PageDocument kept = resolved.page;
    kept.lines.clear();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (failures[i].empty()) {
        kept.lines.push_back(lines[i]);
      } else {
        warn(source, page.page_id, "line " + lines[i].line_id + " dropped: " + failures[i]);
      }
    }
    kept_pages.push_back(std::move(kept));
  }
  if (kept_pages.empty()) throw Error("no page could be processed");

  auto built = dataset::BuildManifest(kept_pages, "lines");
  for (const auto& w : built.warnings) warn("manifest", "", w);
  dataset::WriteManifest((out_dir / "manifest.jsonl").string(), built.manifest);
  WriteJsonl(out_dir / "warnings.jsonl", warnings);
  WriteJsonl(out_dir / "overlaps.jsonl", overlaps);
  WriteRunConfig(out_dir / "run_config.json",
                 {{"command", "extract"},
                  {"xml_dir", o.xml_dir},
                  {"image_dir", o.image_dir},
                  {"out_dir", o.out_dir},
                  {"keep_going", o.keep_going},
                  {"overlap_threshold", o.overlap_threshold},
                  {"preprocess", PreprocessJson(o.preprocess, o.preprocess_config)},
                  {"jobs", o.jobs}});

  ExtractSummary s;
  s.pages = kept_pages.size();
  s.lines = built.manifest.entries.size();
  s.warnings = warnings.size();
  s.overlap_adjustments = overlaps.size();
  return s;
}

AugmentSummary Augment(const AugmentOptions& o) {
  const auto spec = augment::LoadSpec(o.spec_file);
  const auto manifest = dataset::ReadManifest(o.manifest);
  const auto entries = SelectEntries(manifest, o.split);
  const fs::path out_dir(o.out_dir);
  MakeDirs(out_dir);

  std::vector<json> log(entries.size());
  std::vector<char> applied(entries.size(), 0);
  ParallelFor(entries.size(), o.jobs, [&](std::size_t i) {
    const auto& e = entries[i];
    const std::string src = ResolveImage(o.manifest, e.image_path);
    const fs::path dst = out_dir / (e.line_id + ".png");
    const auto image = imaging::ReadImage(src);
    const auto result = augment::Apply(spec, image, {o.seed, e.line_id, o.epoch});
    if (result.applied) {
      imaging::WritePng(dst.string(), result.image);
    } else {
      WriteText(dst, ReadFileBytes(src));
    }
    applied[i] = result.applied;
    log[i] = {{"line_id", e.line_id}, {"kind", augment::KindName(spec.kind)},
              {"applied", result.applied}};
    if (!result.warning.empty()) log[i]["warning"] = result.warning;
  });

  dataset::Manifest out;
  for (const auto& e : entries) {
    auto copy = e;
    copy.image_path = e.line_id + ".png";
    out.entries.push_back(std::move(copy));
  }
  dataset::WriteManifest((out_dir / "manifest.jsonl").string(), out);
  WriteJsonl(out_dir / "augment_log.jsonl", log);
  WriteRunConfig(out_dir / "run_config.json",
                 {{"command", "augment run"},
                  {"manifest", o.manifest},
                  {"spec", augment::ToJson(spec)},
                  {"seed", o.seed},
                  {"epoch", o.epoch},
                  {"split", o.split ? json(*o.split) : json("all")},
                  {"out_dir", o.out_dir},
                  {"jobs", o.jobs}});

  AugmentSummary s;
  s.lines = entries.size();
  s.applied = static_cast<std::size_t>(std::count(applied.begin(), applied.end(), 1));
  return s;
}

std::vector<std::string> Preview(const PreviewOptions& o) {
  if (o.samples < 1 || o.samples > 64) throw Error("samples must lie in [1, 64]");
  const auto image = imaging::ReadImage(o.image);
  std::vector<augment::AugmentationSpec> specs;
  if (o.spec_file) {
    specs.push_back(augment::LoadSpec(*o.spec_file));
  } else {
    for (auto kind : augment::AllKinds())
      if (kind != augment::Kind::kNone) specs.push_back(augment::AugmentationSpec::Default(kind));
  }
  const fs::path out_dir(o.out_dir);
  MakeDirs(out_dir);

  constexpr int kGap = 4;
  constexpr std::uint8_t kGapValue = 160;
  std::vector<std::string> written;
  for (auto spec : specs) {
    spec.apply_probability = 1.0;
    std::vector<imaging::LineImage> tiles{image};
    for (int s = 0; s < o.samples; ++s) {
      const auto r = augment::Apply(spec, image, {o.seed, "preview", s});
      tiles.push_back(r.image);
    }
    int width = 0, height = kGap;
    for (const auto& t : tiles) {
      width = std::max(width, t.width());
      height += t.height() + kGap;
    }
    width += 2 * kGap;
    imaging::LineImage sheet(width, height, kGapValue);
    int y0 = kGap;
    for (const auto& t : tiles) {
      for (int y = 0; y < t.height(); ++y)
        for (int x = 0; x < t.width(); ++x) sheet.at(kGap + x, y0 + y) = t.at(x, y);
      y0 += t.height() + kGap;
    }
    const fs::path path = out_dir / (std::string(augment::KindName(spec.kind)) + ".png");
    imaging::WritePng(path.string(), sheet);
    written.push_back(path.string());
  }
  return written;
}

namespace {

struct LoadedHypotheses {
  std::string model;
  std::map<std::string, ensemble::HypothesisSet> by_line;
};

LoadedHypotheses LoadModelHypotheses(const std::string& path,
                                     const std::optional<std::string>& model) {
  auto sets = ensemble::ReadHypotheses(path);
  std::set<std::string> models;
  for (const auto& s : sets) models.insert(s.model_id);
  LoadedHypotheses out;
  if (model) {
    if (!models.count(*model))
      throw Error("model '" + *model + "' not found in " + path);
    out.model = *model;
  } else if (models.size() == 1) {
    out.model = *models.begin();
  } else if (models.empty()) {
    throw Error(path + " holds no hypothesis records");
  } else {
    throw Error(path + " holds several models; choose one with --model");
  }
  for (auto& s : sets)
    if (s.model_id == out.model) out.by_line.emplace(s.line_id, std::move(s));
  return out;
}

}  // namespace

metrics::EvalReport Evaluate(const EvaluateOptions& o) {
  const auto manifest = dataset::ReadManifest(o.manifest);
  const auto entries = SelectEntries(manifest, o.split);
  const auto hyps = LoadModelHypotheses(o.hypotheses, o.model);

  std::vector<metrics::TextPair> pairs;
  std::size_t skipped_empty = 0, failed = 0;
  for (const auto& e : entries) {
    const auto it = hyps.by_line.find(e.line_id);
    if (it == hyps.by_line.end())
      throw Error("no hypothesis for line '" + e.line_id + "' from model '" + hyps.model + "'");
    if (e.transcription.empty()) {
      ++skipped_empty;
      continue;
    }
    const auto& hs = it->second.hypotheses;
    if (hs.empty()) ++failed;  // scored as an empty prediction
    pairs.emplace_back(e.transcription, hs.empty() ? std::string() : hs.front().text);
  }
  metrics::EvalOptions eo;
  eo.lowercase = o.lowercase;
  eo.jobs = o.jobs;
  auto report = metrics::Evaluate(hyps.model, pairs, eo);
  report.config = {{"command", "evaluate"},
                   {"manifest", o.manifest},
                   {"hypotheses", o.hypotheses},
                   {"model", hyps.model},
                   {"split", o.split ? json(*o.split) : json("all")},
                   {"lowercase", o.lowercase},
                   {"skipped_empty_references", skipped_empty},
                   {"failed_lines", failed},
                   {"htrkit_version", kVersion}};
  return report;
}

ensemble::EnsembleResult Ensemble(const EnsembleOptions& o) {
  auto config = ensemble::LoadConfig(o.config_file);
  const auto manifest = dataset::ReadManifest(o.manifest);
  const auto entries = SelectEntries(manifest, o.split);
  if (o.hypotheses.empty()) throw Error("ensemble needs at least one hypotheses file");

  std::vector<ensemble::HypothesisSet> sets;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& path : o.hypotheses) {
    for (auto& s : ensemble::ReadHypotheses(path)) {
      if (!seen.emplace(s.line_id, s.model_id).second)
        throw Error(path + ": duplicate hypotheses for line '" + s.line_id + "' model '" +
                    s.model_id + "'");
      sets.push_back(std::move(s));
    }
  }
  std::map<std::string, metrics::CharReport> validation;
  for (const auto& path : o.validation_reports) {
    auto r = metrics::LoadReport(path);
    if (!validation.emplace(r.model, r.chars).second)
      throw Error("two validation reports for model '" + r.model + "'");
  }
  std::vector<ensemble::Reference> refs;
  for (const auto& e : entries)
    if (!e.transcription.empty()) refs.push_back({e.line_id, e.transcription});

  auto result = ensemble::RunEnsemble(config, sets, refs, validation, o.jobs);
  result.report.config["command"] = "ensemble";
  result.report.config["manifest"] = o.manifest;
  result.report.config["hypotheses"] = o.hypotheses;
  result.report.config["validation_reports"] = o.validation_reports;
  result.report.config["split"] = o.split ? json(*o.split) : json("all");
  result.report.config["htrkit_version"] = kVersion;
  return result;
}

std::string FetchInstructions() {
  return "The Gwalther corpus is not redistributed with htrkit.\n"
         "Page scans:   https://www.e-manuscripta.ch/zuz/doi/10.7891/e-manuscripta-26750\n"
         "PAGE-XML:     https://zenodo.org/record/4780947\n"
         "Put the PAGE-XML files in one directory and the page images in another,\n"
         "then run: htrkit extract --xml-dir XML --image-dir IMG --out-dir OUT\n";
}

namespace {

struct GlobalFlags {
  std::uint64_t seed = 0;
  int jobs = 1;
  bool keep_going = false;
  bool lowercase = false;
};

std::string ReplaceExtension(const std::string& path, const std::string& ext) {
  return fs::path(path).replace_extension(ext).string();
}

void WriteEvalOutputs(const metrics::EvalReport& report, const std::optional<std::string>& out,
                      const std::optional<std::string>& confusion_csv) {
  const std::string text = metrics::FormatText(report);
  std::cout << text;
  if (out) {
    WriteText(*out, metrics::ToJson(report).dump(2) + "\n");
    WriteText(ReplaceExtension(*out, ".txt"), text);
  }
  if (confusion_csv) {
    if (!report.confusion) throw Error("report carries no confusion matrix");
    WriteText(*confusion_csv, report.confusion->ToCsv());
  }
}

}  // namespace

int Run(int argc, const char* const* argv) {
  CLI::App app{"htrkit: line-level HTR data pipeline, augmentation, evaluation and ensembling"};
  app.set_config("--config", "", "Read options from an INI/TOML file");
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads for per-line work")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  app.add_flag("--keep-going", g.keep_going, "Skip broken pages instead of failing");
  app.add_flag("--lowercase", g.lowercase, "Lowercase both sides before scoring");

  // extract
  ExtractOptions ex;
  int max_width = 384;
  bool raw = false, no_binarize = false;
  auto* extract = app.add_subcommand("extract", "Crop PAGE-XML text lines into a manifest");
  extract->fallthrough();
  extract->add_option("--xml-dir", ex.xml_dir)->required();
  extract->add_option("--image-dir", ex.image_dir)->required();
  extract->add_option("--out-dir", ex.out_dir)->required();
  extract->add_option("--target-height", ex.preprocess_config.target_height)->capture_default_str();
  extract->add_option("--max-width", max_width, "0 disables width capping")->capture_default_str();
  extract->add_flag("--no-binarize", no_binarize);
  extract->add_flag("--raw", raw, "Write crops without preprocessing");
  extract->add_option("--overlap-threshold", ex.overlap_threshold)->capture_default_str();

  // dataset
  auto* ds = app.add_subcommand("dataset", "Manifest splitting, statistics and sources");
  ds->fallthrough();
  ds->require_subcommand(1);
  std::string split_in, split_out;
  double fraction = 433.0 / 4036.0;
  auto* split = ds->add_subcommand("split", "Seeded train/validation split");
  split->fallthrough();
  split->add_option("--manifest", split_in)->required();
  split->add_option("--out", split_out)->required();
  split->add_option("--fraction", fraction, "Validation fraction")->capture_default_str();
  std::string stats_in;
  std::optional<std::string> stats_out;
  auto* stats = ds->add_subcommand("stats", "Lines per split and character histogram");
  stats->fallthrough();
  stats->add_option("--manifest", stats_in)->required();
  stats->add_option("--out", stats_out);
  auto* fetch = ds->add_subcommand("fetch", "Print where to obtain the corpus");

  // augment
  auto* aug = app.add_subcommand("augment", "Seeded line-image augmentation");
  aug->fallthrough();
  aug->require_subcommand(1);
  AugmentOptions ao;
  auto* aug_run = aug->add_subcommand("run", "Augment every manifest line with one spec");
  aug_run->fallthrough();
  aug_run->add_option("--manifest", ao.manifest)->required();
  aug_run->add_option("--spec", ao.spec_file)->required();
  aug_run->add_option("--out-dir", ao.out_dir)->required();
  aug_run->add_option("--epoch", ao.epoch)->capture_default_str();
  aug_run->add_option("--split", ao.split, "train, validation, unassigned or all");
  PreviewOptions po;
  auto* preview = aug->add_subcommand("preview", "Contact sheet per augmentation kind");
  preview->fallthrough();
  preview->add_option("--image", po.image)->required();
  preview->add_option("--spec", po.spec_file);
  preview->add_option("--out-dir", po.out_dir)->required();
  preview->add_option("--samples", po.samples)->capture_default_str();

  // evaluate
  EvaluateOptions eo;
  std::optional<std::string> eval_out, eval_csv;
  auto* evaluate = app.add_subcommand("evaluate", "Score one model's rank-1 hypotheses");
  evaluate->fallthrough();
  evaluate->add_option("--manifest", eo.manifest)->required();
  evaluate->add_option("--hypotheses", eo.hypotheses)->required();
  evaluate->add_option("--model", eo.model);
  evaluate->add_option("--split", eo.split);
  evaluate->add_option("--out", eval_out, "JSON report; a .txt twin is written beside it");
  evaluate->add_option("--confusion-csv", eval_csv);

  // ensemble
  EnsembleOptions no;
  std::optional<std::string> ens_out, ens_winners, ens_csv;
  auto* ens = app.add_subcommand("ensemble", "Vote across models and score the winners");
  ens->fallthrough();
  ens->add_option("--ensemble-config", no.config_file)->required();
  ens->add_option("--manifest", no.manifest)->required();
  ens->add_option("--hypotheses", no.hypotheses)->required();
  ens->add_option("--validation-reports", no.validation_reports);
  ens->add_option("--split", no.split);
  ens->add_option("--out", ens_out);
  ens->add_option("--winners", ens_winners, "Winning lines as hypothesis JSONL");
  ens->add_option("--confusion-csv", ens_csv);

  // report
  std::vector<std::string> report_in;
  std::optional<std::string> report_chars, report_out;
  auto* report = app.add_subcommand("report", "Compare eval reports");
  report->fallthrough();
  report->add_option("reports", report_in)->required();
  report->add_option("--chars", report_chars, "Restrict the per-character table");
  report->add_option("--out", report_out, "JSON tables; a .txt twin is written beside it");

  // validate-hypotheses
  std::string vh_in;
  int beam = ensemble::kDefaultBeamWidth;
  auto* vh = app.add_subcommand("validate-hypotheses", "Check a hypothesis JSONL file");
  vh->fallthrough();
  vh->add_option("file", vh_in)->required();
  vh->add_option("--beam-width", beam)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*extract) {
      ex.keep_going = g.keep_going;
      ex.jobs = g.jobs;
      ex.preprocess = !raw;
      ex.preprocess_config.binarize = !no_binarize;
      ex.preprocess_config.max_width =
          max_width > 0 ? std::optional<int>(max_width) : std::nullopt;
      const auto s = Extract(ex);
      std::cout << fmt::format("pages {}  lines {}  warnings {}  overlap adjustments {}\n",
                               s.pages, s.lines, s.warnings, s.overlap_adjustments);
    } else if (*split) {
      auto m = dataset::SplitManifest(dataset::ReadManifest(split_in), fraction, g.seed);
      dataset::WriteManifest(split_out, m);
      WriteRunConfig(split_out + ".run_config.json", {{"command", "dataset split"},
                                                      {"manifest", split_in},
                                                      {"out", split_out},
                                                      {"fraction", fraction},
                                                      {"seed", g.seed}});
      std::size_t val = 0;
      for (const auto& e : m.entries) val += e.split == dataset::Split::kValidation;
      std::cout << fmt::format("train {}  validation {}\n", m.entries.size() - val, val);
    } else if (*stats) {
      json doc = dataset::ToJson(dataset::ComputeStats(dataset::ReadManifest(stats_in)));
      doc["config"] = {{"command", "dataset stats"}, {"manifest", stats_in},
                       {"htrkit_version", kVersion}};
      if (stats_out) WriteText(*stats_out, doc.dump(2) + "\n");
      std::cout << doc.dump(2) << "\n";
    } else if (*fetch) {
      std::cout << FetchInstructions();
    } else if (*aug_run) {
      ao.seed = g.seed;
      ao.jobs = g.jobs;
      const auto s = Augment(ao);
      std::cout << fmt::format("lines {}  transformed {}\n", s.lines, s.applied);
    } else if (*preview) {
      po.seed = g.seed;
      for (const auto& p : Preview(po)) std::cout << p << "\n";
    } else if (*evaluate) {
      eo.lowercase = g.lowercase;
      eo.jobs = g.jobs;
      WriteEvalOutputs(Evaluate(eo), eval_out, eval_csv);
    } else if (*ens) {
      no.jobs = g.jobs;
      auto result = Ensemble(no);
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
      WriteEvalOutputs(result.report, ens_out, ens_csv);
      if (ens_winners) {
        std::vector<ensemble::HypothesisSet> sets;
        for (const auto& [line_id, text] : result.winners)
          sets.push_back({line_id, result.report.model, {{text, 0.0, 1}}, std::nullopt});
        ensemble::WriteHypotheses(*ens_winners, sets);
      }
    } else if (*report) {
      std::vector<metrics::EvalReport> reports;
      for (const auto& path : report_in) reports.push_back(metrics::LoadReport(path));
      auto tables = BuildReport(reports, report_chars);
      tables.json["config"] = {{"command", "report"}, {"reports", report_in},
                               {"htrkit_version", kVersion}};
      if (report_chars) tables.json["config"]["chars"] = *report_chars;
      std::cout << tables.text;
      if (report_out) {
        WriteText(*report_out, tables.json.dump(2) + "\n");
        WriteText(ReplaceExtension(*report_out, ".txt"), tables.text);
      }
    } else if (*vh) {
      const auto check = ensemble::CheckHypothesesFile(vh_in, beam);
      for (const auto& p : check.problems) std::cout << p << "\n";
      std::cout << fmt::format("records {}  hypotheses {}  problems {}\n", check.records,
                               check.hypotheses, check.problems.size());
      return check.problems.empty() ? kExitOk : kExitData;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace htrkit::cli
