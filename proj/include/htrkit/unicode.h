// include/htrkit/unicode.h

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

#ifndef HTRKIT_UNICODE_H_
#define HTRKIT_UNICODE_H_

#include <string>
#include <string_view>

namespace htrkit::unicode {

// All text entering the metrics and voting code goes through these helpers.
// Invalid UTF-8 raises htrkit::Error.

std::u32string Decode(std::string_view utf8);
std::string Encode(std::u32string_view text);
std::string Encode(char32_t c);

bool IsValidUtf8(std::string_view utf8);

// NFC normalization.
std::string Nfc(std::string_view utf8);

// Full Unicode lowercase mapping (locale-independent).
std::string Lowercase(std::string_view utf8);

// NFC + optional lowercase, decoded to code points.
std::u32string Canonical(std::string_view utf8, bool lowercase = false);

// Drops trailing Unicode whitespace.
std::string TrimTrailingSpace(std::string_view utf8);

// Printable label for a single character in tables ("space", "\t", ...).
std::string CharLabel(char32_t c);

}  // namespace htrkit::unicode

#endif  // HTRKIT_UNICODE_H_
