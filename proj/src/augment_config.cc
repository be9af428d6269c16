// src/augment_config.cc

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

#include "htrkit/augment_config.h"

#include <fstream>
#include <set>

#include "htrkit/error.h"

namespace htrkit::augment {

using nlohmann::json;

namespace {

json RangeJson(const Range& r) { return json::array({r.lo, r.hi}); }
json RangeJson(const IntRange& r) { return json::array({r.lo, r.hi}); }

void ReadRange(const json& v, Range* r, const char* key) {
  if (v.is_number()) {
    r->lo = r->hi = v.get<double>();
  } else if (v.is_array() && v.size() == 2 && v[0].is_number() &&
             v[1].is_number()) {
    r->lo = v[0].get<double>();
    r->hi = v[1].get<double>();
  } else {
    throw Error(std::string("param '") + key + "' must be a number or [lo, hi]");
  }
}

void ReadRange(const json& v, IntRange* r, const char* key) {
  if (v.is_number_integer()) {
    r->lo = r->hi = v.get<int>();
  } else if (v.is_array() && v.size() == 2 && v[0].is_number_integer() &&
             v[1].is_number_integer()) {
    r->lo = v[0].get<int>();
    r->hi = v[1].get<int>();
  } else {
    throw Error(std::string("param '") + key +
                "' must be an integer or [lo, hi] integers");
  }
}

class ParamReader {
 public:
  explicit ParamReader(const json& params) : params_(params) {
    if (!params.is_object()) throw Error("'params' must be an object");
  }
  template <typename R>
  void Range(const char* key, R* out) {
    seen_.insert(key);
    if (auto it = params_.find(key); it != params_.end()) ReadRange(*it, out, key);
  }
  void Number(const char* key, double* out) {
    seen_.insert(key);
    if (auto it = params_.find(key); it != params_.end()) {
      if (!it->is_number())
        throw Error(std::string("param '") + key + "' must be a number");
      *out = it->get<double>();
    }
  }
  void ElementShape(const char* key, Element* out) {
    seen_.insert(key);
    if (auto it = params_.find(key); it != params_.end()) {
      const std::string v = it->is_string() ? it->get<std::string>() : "";
      if (v == "square") *out = Element::kSquare;
      else if (v == "cross") *out = Element::kCross;
      else throw Error("param 'element' must be \"square\" or \"cross\"");
    }
  }
  void RejectUnknown() const {
    for (const auto& [key, _] : params_.items())
      if (!seen_.contains(key))
        throw Error("unknown augmentation parameter '" + key + "'");
  }

 private:
  const json& params_;
  std::set<std::string> seen_;
};

}  // namespace

json ToJson(const AugmentationSpec& spec) {
  json params = json::object();
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, RotationParams>) {
          params["degrees"] = RangeJson(p.degrees);
        } else if constexpr (std::is_same_v<P, BlurParams>) {
          params["sigma"] = RangeJson(p.sigma);
        } else if constexpr (std::is_same_v<P, MorphParams>) {
          params["size"] = RangeJson(p.size);
          params["element"] = p.element == Element::kSquare ? "square" : "cross";
        } else if constexpr (std::is_same_v<P, ResizeParams>) {
          params["factor"] = RangeJson(p.factor);
        } else if constexpr (std::is_same_v<P, ReResizeParams>) {
          params["factor"] = RangeJson(p.factor);
          params["cycles"] = RangeJson(p.cycles);
        } else if constexpr (std::is_same_v<P, UnderlineParams>) {
          params["thickness"] = RangeJson(p.thickness);
          params["band_fraction"] = p.band_fraction;
        } else if constexpr (std::is_same_v<P, ElasticParams>) {
          params["alpha"] = RangeJson(p.alpha);
          params["sigma"] = RangeJson(p.sigma);
        } else if constexpr (std::is_same_v<P, AffineParams>) {
          params["shear_degrees"] = RangeJson(p.shear_degrees);
          params["scale"] = RangeJson(p.scale);
        } else if constexpr (std::is_same_v<P, PerspectiveParams>) {
          params["distortion"] = p.distortion;
        }
      },
      spec.params);
  return {{"kind", std::string(KindName(spec.kind))},
          {"apply_probability", spec.apply_probability},
          {"params", params}};
}

AugmentationSpec SpecFromJson(const json& doc) {
  if (!doc.is_object()) throw Error("augmentation spec must be a JSON object");
  for (const auto& [key, _] : doc.items())
    if (key != "kind" && key != "apply_probability" && key != "params")
      throw Error("unknown augmentation spec field '" + key + "'");
  const auto kind_it = doc.find("kind");
  if (kind_it == doc.end() || !kind_it->is_string())
    throw Error("augmentation spec needs a string 'kind'");
  AugmentationSpec spec = AugmentationSpec::Default(ParseKind(kind_it->get<std::string>()));
  if (auto it = doc.find("apply_probability"); it != doc.end()) {
    if (!it->is_number()) throw Error("'apply_probability' must be a number");
    spec.apply_probability = it->get<double>();
  }
  const json empty = json::object();
  const auto params_it = doc.find("params");
  ParamReader reader(params_it == doc.end() ? empty : *params_it);
  std::visit(
      [&](auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, RotationParams>) {
          reader.Range("degrees", &p.degrees);
        } else if constexpr (std::is_same_v<P, BlurParams>) {
          reader.Range("sigma", &p.sigma);
        } else if constexpr (std::is_same_v<P, MorphParams>) {
          reader.Range("size", &p.size);
          reader.ElementShape("element", &p.element);
        } else if constexpr (std::is_same_v<P, ResizeParams>) {
          reader.Range("factor", &p.factor);
        } else if constexpr (std::is_same_v<P, ReResizeParams>) {
          reader.Range("factor", &p.factor);
          reader.Range("cycles", &p.cycles);
        } else if constexpr (std::is_same_v<P, UnderlineParams>) {
          reader.Range("thickness", &p.thickness);
          reader.Number("band_fraction", &p.band_fraction);
        } else if constexpr (std::is_same_v<P, ElasticParams>) {
          reader.Range("alpha", &p.alpha);
          reader.Range("sigma", &p.sigma);
        } else if constexpr (std::is_same_v<P, AffineParams>) {
          reader.Range("shear_degrees", &p.shear_degrees);
          reader.Range("scale", &p.scale);
        } else if constexpr (std::is_same_v<P, PerspectiveParams>) {
          reader.Number("distortion", &p.distortion);
        }
      },
      spec.params);
  reader.RejectUnknown();
  Validate(spec);
  return spec;
}

AugmentationSpec LoadSpec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  }
  return SpecFromJson(doc);
}

}  // namespace htrkit::augment
