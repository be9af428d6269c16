// src/pagexml.cc

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

#include "htrkit/pagexml.h"

#include <expat.h>

#include <algorithm>
#include <charconv>
#include <cctype>
#include <climits>
#include <cmath>
#include <fstream>
#include <iterator>
#include <memory>
#include <set>
#include <sstream>

#include "htrkit/error.h"
#include "htrkit/unicode.h"

namespace htrkit::pagexml {

namespace {

std::string_view LocalName(const char* name) {
  std::string_view s(name);
  const auto colon = s.rfind(':');
  return colon == std::string_view::npos ? s : s.substr(colon + 1);
}

const char* FindAttr(const char** attrs, std::string_view local) {
  for (int i = 0; attrs[i] != nullptr; i += 2)
    if (LocalName(attrs[i]) == local) return attrs[i + 1];
  return nullptr;
}

bool ParseInt(std::string_view s, int* out) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return false;
  if (!std::isfinite(value) || std::fabs(value) > INT_MAX / 2) return false;
  *out = static_cast<int>(std::lround(value));
  return true;
}

struct PendingLine {
  LineRecord record;
  int depth = 0;
  bool has_coords = false;
  bool bad_points = false;
  bool legacy_points = false;  // Coords given as <Point x= y=/> children
  bool has_text = false;
  long text_index = LONG_MAX;
  // Open TextEquiv belonging directly to this line.
  bool in_equiv = false;
  long equiv_index = 0;
  int equiv_depth = 0;
  bool in_unicode = false;
  std::string unicode_buffer;
};

class PageHandler {
 public:
  explicit PageHandler(XML_Parser parser) : parser_(parser) {}

  void Start(const char* name, const char** attrs) {
    ++depth_;
    if (failed_) return;
    const std::string_view local = LocalName(name);
    if (depth_ == 1) {
      if (const char* id = FindAttr(attrs, "pcGtsId")) page_.page_id = id;
    }
    if (local == "Page" && !seen_page_) {
      seen_page_ = true;
      if (const char* f = FindAttr(attrs, "imageFilename"))
        page_.image_filename = f;
      const char* w = FindAttr(attrs, "imageWidth");
      const char* h = FindAttr(attrs, "imageHeight");
      if (w == nullptr || h == nullptr) {
        Fail("Page element lacks imageWidth/imageHeight");
        return;
      }
      if (!ParseInt(w, &page_.image_width) ||
          !ParseInt(h, &page_.image_height) || page_.image_width <= 0 ||
          page_.image_height <= 0) {
        Fail("Page dimensions must be positive integers");
        return;
      }
      return;
    }
    if (local == "TextLine") {
      if (line_) {
        Fail("nested TextLine elements");
        return;
      }
      line_.emplace();
      line_->depth = depth_;
      if (const char* id = FindAttr(attrs, "id")) line_->record.line_id = id;
      return;
    }
    if (!line_) return;
    const int rel = depth_ - line_->depth;
    if (rel == 1 && local == "Coords") {
      line_->has_coords = true;
      if (const char* pts = FindAttr(attrs, "points")) {
        if (!ParsePointList(pts, &line_->record.polygon))
          line_->bad_points = true;
      } else {
        line_->legacy_points = true;
      }
    } else if (rel == 2 && local == "Point" && line_->legacy_points) {
      int x = 0, y = 0;
      const char* xs = FindAttr(attrs, "x");
      const char* ys = FindAttr(attrs, "y");
      if (xs && ys && ParseInt(xs, &x) && ParseInt(ys, &y))
        line_->record.polygon.push_back({x, y});
      else
        line_->bad_points = true;
    } else if (rel == 1 && local == "Baseline") {
      std::vector<Point> baseline;
      if (const char* pts = FindAttr(attrs, "points");
          pts && ParsePointList(pts, &baseline))
        line_->record.baseline = std::move(baseline);
    } else if (rel == 1 && local == "TextEquiv") {
      line_->in_equiv = true;
      line_->equiv_depth = depth_;
      line_->equiv_index = 0;
      if (const char* idx = FindAttr(attrs, "index")) {
        int v = 0;
        if (ParseInt(idx, &v)) line_->equiv_index = v;
      }
    } else if (line_->in_equiv && depth_ == line_->equiv_depth + 1 &&
               local == "Unicode") {
      line_->in_unicode = true;
      line_->unicode_buffer.clear();
    }
  }

  void End(const char* name) {
    const std::string_view local = LocalName(name);
    if (!failed_ && line_) {
      if (line_->in_unicode && local == "Unicode" &&
          depth_ == line_->equiv_depth + 1) {
        line_->in_unicode = false;
        if (line_->equiv_index < line_->text_index) {
          line_->text_index = line_->equiv_index;
          line_->record.transcription = line_->unicode_buffer;
          line_->has_text = true;
        }
      } else if (line_->in_equiv && depth_ == line_->equiv_depth) {
        line_->in_equiv = false;
      } else if (depth_ == line_->depth) {
        FinishLine();
      }
    }
    --depth_;
  }

  void Text(const char* s, int len) {
    if (!failed_ && line_ && line_->in_unicode)
      line_->unicode_buffer.append(s, static_cast<std::size_t>(len));
  }

  bool failed() const { return failed_; }
  const std::string& failure() const { return failure_; }
  std::size_t failure_offset() const { return failure_offset_; }
  bool seen_page() const { return seen_page_; }
  PageDocument& page() { return page_; }

 private:
  static bool ParsePointList(const char* text, std::vector<Point>* out) {
    try {
      *out = ParsePoints(text);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  void FinishLine() {
    PendingLine pending = std::move(*line_);
    line_.reset();
    LineRecord& rec = pending.record;
    const std::string label =
        rec.line_id.empty() ? "(unnamed TextLine)" : "line " + rec.line_id;
    if (rec.line_id.empty()) {
      page_.warnings.push_back(label + ": missing id attribute, skipped");
      return;
    }
    if (!pending.has_coords) {
      page_.warnings.push_back(label + ": missing Coords, skipped");
      return;
    }
    if (pending.bad_points || rec.polygon.size() < 3) {
      page_.warnings.push_back(label + ": unusable Coords points, skipped");
      return;
    }
    if (!ids_.insert(rec.line_id).second) {
      Fail("duplicate TextLine id '" + rec.line_id + "'");
      return;
    }
    if (!unicode::IsValidUtf8(rec.transcription)) {
      Fail(label + ": transcription is not valid UTF-8");
      return;
    }
    rec.annotated = pending.has_text && !rec.transcription.empty();
    page_.lines.push_back(std::move(rec));
  }

  void Fail(std::string message) {
    if (failed_) return;
    failed_ = true;
    failure_ = std::move(message);
    failure_offset_ = static_cast<std::size_t>(
        std::max<XML_Index>(0, XML_GetCurrentByteIndex(parser_)));
    XML_StopParser(parser_, XML_FALSE);
  }

  XML_Parser parser_;
  PageDocument page_;
  std::optional<PendingLine> line_;
  std::set<std::string> ids_;
  int depth_ = 0;
  bool seen_page_ = false;
  bool failed_ = false;
  std::string failure_;
  std::size_t failure_offset_ = 0;
};

void XMLCALL OnStart(void* data, const XML_Char* name, const XML_Char** attrs) {
  static_cast<PageHandler*>(data)->Start(name, attrs);
}
void XMLCALL OnEnd(void* data, const XML_Char* name) {
  static_cast<PageHandler*>(data)->End(name);
}
void XMLCALL OnText(void* data, const XML_Char* s, int len) {
  static_cast<PageHandler*>(data)->Text(s, len);
}

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

void EscapeXml(std::string_view text, std::string* out) {
  for (char c : text) {
    switch (c) {
      case '&': *out += "&amp;"; break;
      case '<': *out += "&lt;"; break;
      case '>': *out += "&gt;"; break;
      case '"': *out += "&quot;"; break;
      case '\r': *out += "&#13;"; break;
      default: out->push_back(c);
    }
  }
}

std::string Escaped(std::string_view text) {
  std::string out;
  EscapeXml(text, &out);
  return out;
}

// Polygon area x2 by the shoelace formula.
// True when every point lies on one line. Unlike the shoelace area this
// does not depend on the point order.
bool Collinear(const std::vector<Point>& poly) {
  const Point& a = poly[0];
  std::size_t far = 0;
  for (std::size_t i = 1; i < poly.size(); ++i)
    if (poly[i] != a) far = i;
  if (far == 0) return true;
  const Point& b = poly[far];
  for (const Point& p : poly) {
    const long long cross = static_cast<long long>(b.x - a.x) * (p.y - a.y) -
                            static_cast<long long>(b.y - a.y) * (p.x - a.x);
    if (cross != 0) return false;
  }
  return true;
}

}  // namespace

std::vector<Point> ParsePoints(std::string_view points) {
  std::vector<Point> out;
  std::istringstream in{std::string(points)};
  std::string token;
  while (in >> token) {
    const auto comma = token.find(',');
    int x = 0, y = 0;
    if (comma == std::string::npos ||
        !ParseInt(std::string_view(token).substr(0, comma), &x) ||
        !ParseInt(std::string_view(token).substr(comma + 1), &y))
      throw Error("malformed point '" + token + "'");
    out.push_back({x, y});
  }
  return out;
}

std::string FormatPoints(const std::vector<Point>& points) {
  std::string out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += std::to_string(points[i].x) + "," + std::to_string(points[i].y);
  }
  return out;
}

PageDocument ParsePage(std::string_view xml_bytes,
                       std::string_view fallback_page_id) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(
      XML_ParserCreate("UTF-8"));
  if (!parser) throw Error("cannot allocate XML parser");
  PageHandler handler(parser.get());
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(parser.get(), OnStart, OnEnd);
  XML_SetCharacterDataHandler(parser.get(), OnText);

  // Feed in chunks so documents larger than INT_MAX bytes are handled.
  constexpr std::size_t kChunk = 1 << 20;
  std::size_t pos = 0;
  XML_Status status = XML_STATUS_OK;
  do {
    const std::size_t n = std::min(kChunk, xml_bytes.size() - pos);
    const bool last = pos + n == xml_bytes.size();
    status = XML_Parse(parser.get(), xml_bytes.data() + pos,
                       static_cast<int>(n), last ? XML_TRUE : XML_FALSE);
    pos += n;
  } while (status == XML_STATUS_OK && pos < xml_bytes.size());

  if (handler.failed()) throw ParseError(handler.failure(), handler.failure_offset());
  if (status != XML_STATUS_OK) {
    const XML_Index at = XML_GetCurrentByteIndex(parser.get());
    throw ParseError(
        std::string("malformed XML: ") +
            XML_ErrorString(XML_GetErrorCode(parser.get())),
        static_cast<std::size_t>(std::max<XML_Index>(0, at)));
  }
  if (!handler.seen_page()) throw Error("document has no Page element");

  PageDocument page = std::move(handler.page());
  if (page.page_id.empty()) page.page_id = std::string(fallback_page_id);
  return page;
}

PageDocument ReadPageFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos)
    stem = stem.substr(slash + 1);
  if (const auto dot = stem.rfind('.'); dot != std::string::npos)
    stem = stem.substr(0, dot);
  try {
    return ParsePage(bytes, stem);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.offset());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string WritePage(const PageDocument& page) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<PcGts xmlns=\"http://schema.primaresearch.org/PAGE/gts/pagecontent/"
      "2019-07-15\" pcGtsId=\"" +
      Escaped(page.page_id) + "\">\n";
  out += "  <Metadata><Creator>htrkit</Creator></Metadata>\n";
  out += "  <Page imageFilename=\"" + Escaped(page.image_filename) +
         "\" imageWidth=\"" + std::to_string(page.image_width) +
         "\" imageHeight=\"" + std::to_string(page.image_height) + "\">\n";
  out += "    <TextRegion id=\"r1\">\n";
  for (const LineRecord& line : page.lines) {
    out += "      <TextLine id=\"" + Escaped(line.line_id) + "\">\n";
    out += "        <Coords points=\"" + FormatPoints(line.polygon) + "\"/>\n";
    if (line.baseline)
      out += "        <Baseline points=\"" + FormatPoints(*line.baseline) +
             "\"/>\n";
    if (line.annotated) {
      out += "        <TextEquiv><Unicode>";
      EscapeXml(line.transcription, &out);
      out += "</Unicode></TextEquiv>\n";
    }
    out += "      </TextLine>\n";
  }
  out += "    </TextRegion>\n  </Page>\n</PcGts>\n";
  return out;
}

Rect CropRect(const LineRecord& line, int page_width, int page_height) {
  const auto& poly = line.polygon;
  if (poly.size() < 3)
    throw Error("line " + line.line_id + ": polygon needs at least 3 points");
  if (Collinear(poly))
    throw Error("line " + line.line_id + ": polygon has zero area");
  Rect r{poly[0].x, poly[0].y, poly[0].x, poly[0].y};
  for (const Point& p : poly) {
    r.x0 = std::min(r.x0, p.x);
    r.y0 = std::min(r.y0, p.y);
    r.x1 = std::max(r.x1, p.x);
    r.y1 = std::max(r.y1, p.y);
  }
  r.x0 = std::clamp(r.x0, 0, page_width);
  r.x1 = std::clamp(r.x1, 0, page_width);
  r.y0 = std::clamp(r.y0, 0, page_height);
  r.y1 = std::clamp(r.y1, 0, page_height);
  if (r.x1 <= r.x0 || r.y1 <= r.y0)
    throw Error("line " + line.line_id + ": crop rectangle is empty");
  return r;
}

OverlapResult ResolveOverlaps(const PageDocument& page,
                              const OverlapPolicy& policy) {
  OverlapResult result{page, {}};
  auto& lines = result.page.lines;

  std::vector<std::optional<Rect>> rects(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      rects[i] = CropRect(lines[i], page);
    } catch (const Error&) {
      // Degenerate lines take no part in overlap resolution.
    }
  }
  std::vector<Rect> original(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (rects[i]) original[i] = *rects[i];

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        if (!rects[i] || !rects[j]) continue;
        Rect& a = *rects[i];
        Rect& b = *rects[j];
        if (std::min(a.x1, b.x1) <= std::max(a.x0, b.x0)) continue;
        const int band0 = std::max(a.y0, b.y0);
        const int band1 = std::min(a.y1, b.y1);
        if (band1 <= band0) continue;
        const int shorter = std::min(a.height(), b.height());
        if (static_cast<double>(band1 - band0) <=
            policy.threshold * static_cast<double>(shorter))
          continue;
        const bool a_upper =
            a.y0 != b.y0 ? a.y0 < b.y0 : a.y1 <= b.y1;
        const std::size_t ui = a_upper ? i : j;
        const std::size_t li = a_upper ? j : i;
        Rect& upper = a_upper ? a : b;
        Rect& lower = a_upper ? b : a;
        const int mid = band0 + (band1 - band0) / 2;
        if (mid <= upper.y0 || mid >= lower.y1) continue;
        const Rect upper_before = upper;
        const Rect lower_before = lower;
        upper.y1 = mid;
        lower.y0 = std::max(lower.y0, mid);
        result.report.push_back(
            {lines[ui].line_id, lines[li].line_id, upper_before, upper});
        if (lower.y0 != lower_before.y0)
          result.report.push_back(
              {lines[li].line_id, lines[ui].line_id, lower_before, lower});
        changed = true;
      }
    }
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!rects[i] || *rects[i] == original[i]) continue;
    for (Point& p : lines[i].polygon)
      p.y = std::clamp(p.y, rects[i]->y0, rects[i]->y1);
    if (lines[i].baseline)
      for (Point& p : *lines[i].baseline)
        p.y = std::clamp(p.y, rects[i]->y0, rects[i]->y1);
  }
  return result;
}

}  // namespace htrkit::pagexml
