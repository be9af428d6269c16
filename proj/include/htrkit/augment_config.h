// include/htrkit/augment_config.h

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

#ifndef HTRKIT_AUGMENT_CONFIG_H_
#define HTRKIT_AUGMENT_CONFIG_H_

#include <string>

#include "htrkit/augment.h"
#include "json.hpp"

namespace htrkit::augment {

// JSON form:
//   {"kind": "Elastic", "apply_probability": 0.5,
//    "params": {"alpha": [20, 40], "sigma": [4, 6]}}
// Missing params fall back to the kind's defaults; unknown keys are errors.
nlohmann::json ToJson(const AugmentationSpec& spec);
AugmentationSpec SpecFromJson(const nlohmann::json& doc);
AugmentationSpec LoadSpec(const std::string& path);

}  // namespace htrkit::augment

#endif  // HTRKIT_AUGMENT_CONFIG_H_
