// include/htrkit/pagexml.h

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

#ifndef HTRKIT_PAGEXML_H_
#define HTRKIT_PAGEXML_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace htrkit::pagexml {

struct Point {
  int x = 0;
  int y = 0;
  bool operator==(const Point&) const = default;
};

// Half-open pixel rectangle [x0, x1) x [y0, y1).
struct Rect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  bool operator==(const Rect&) const = default;
};

struct LineRecord {
  std::string line_id;
  std::vector<Point> polygon;
  std::optional<std::vector<Point>> baseline;
  std::string transcription;
  // False when the line has no TextEquiv/Unicode text. Only unannotated
  // lines may carry an empty transcription.
  bool annotated = true;

  bool operator==(const LineRecord&) const = default;
};

struct PageDocument {
  std::string page_id;
  std::string image_filename;
  int image_width = 0;
  int image_height = 0;
  std::vector<LineRecord> lines;
  // Lines dropped during parsing, one message each.
  std::vector<std::string> warnings;
};

// Parses a PAGE-XML document. Elements are matched by local name, so any
// PAGE namespace version is accepted. TextLines are returned in document
// order; ReadingOrder is ignored.
//
// Throws ParseError for malformed XML (with the byte offset) and Error when
// the Page element or its dimensions are missing or a line id repeats.
// Lines without usable Coords are skipped and listed in `warnings`.
// `fallback_page_id` is used when the root carries no pcGtsId.
PageDocument ParsePage(std::string_view xml_bytes,
                       std::string_view fallback_page_id = "");

PageDocument ReadPageFile(const std::string& path);

// Minimal PAGE 2019 serialization: one TextRegion holding every line.
std::string WritePage(const PageDocument& page);

std::vector<Point> ParsePoints(std::string_view points);
std::string FormatPoints(const std::vector<Point>& points);

// Tight bounding rectangle of the polygon clamped to the page. Throws Error
// for polygons with fewer than three points, zero area, or an empty rectangle
// after clamping.
Rect CropRect(const LineRecord& line, int page_width, int page_height);
inline Rect CropRect(const LineRecord& line, const PageDocument& page) {
  return CropRect(line, page.image_width, page.image_height);
}

struct OverlapPolicy {
  // Rectangles whose shared vertical band exceeds this fraction of the
  // shorter rectangle's height are split.
  double threshold = 0.1;
};

struct OverlapAdjustment {
  std::string line_id;
  std::string partner_id;
  Rect before;
  Rect after;
};

struct OverlapResult {
  PageDocument page;
  std::vector<OverlapAdjustment> report;
};

// Splits vertically overlapping line crops at the midpoint of the shared
// band. Only pairs that also overlap horizontally are considered. Pairs are
// visited in document order and passes repeat until nothing changes, so the
// operation is idempotent. Adjusted lines have their polygon y-coordinates
// clamped to the new band.
OverlapResult ResolveOverlaps(const PageDocument& page,
                              const OverlapPolicy& policy = {});

}  // namespace htrkit::pagexml

#endif  // HTRKIT_PAGEXML_H_
