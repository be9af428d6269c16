// include/htrkit/random.h

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

#ifndef HTRKIT_RANDOM_H_
#define HTRKIT_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace htrkit {

std::uint64_t SplitMix64(std::uint64_t x);

// 64-bit FNV-1a.
std::uint64_t Fnv1a(std::string_view bytes);

// Random stream whose output is identical on every platform: the engine is
// std::mt19937_64 (fully specified by the standard) and the conversions to
// doubles and bounded integers are done here rather than through the
// implementation-defined std:: distributions.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1).
  double Uniform();
  // Uniform in [lo, hi]; returns lo when lo == hi.
  double Uniform(double lo, double hi);
  // Uniform integer in [lo, hi], unbiased.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);
  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace htrkit

#endif  // HTRKIT_RANDOM_H_
