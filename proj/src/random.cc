// Copyright 2026 The xrayaug Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xrayaug/random.h"

#include "xrayaug/errors.h"

namespace xrayaug {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t RandomStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double RandomStream::uniform() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  if (!(lo <= hi)) throw ParameterError("uniform: lo must not exceed hi");
  if (lo == hi) {
    ++counter_;  // keep the draw count independent of the range
    return lo;
  }
  return lo + (hi - lo) * uniform();
}

uint64_t RandomStream::uniform_index(uint64_t n) {
  if (n == 0) throw ParameterError("uniform_index: n must be >= 1");
  // Rejection sampling against the largest multiple of n.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

int64_t RandomStream::uniform_int(int64_t lo, int64_t hi) {
  if (lo > hi) throw ParameterError("uniform_int: lo must not exceed hi");
  return lo + int64_t(uniform_index(uint64_t(hi - lo) + 1));
}

uint64_t stable_hash(std::string_view bytes) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return mix64(h);
}

RandomStream derive_stream(uint64_t seed, std::string_view sample_id,
                           uint64_t spec_index) {
  uint64_t key = mix64(seed ^ 0x6A09E667F3BCC909ULL);
  key = mix64(key ^ stable_hash(sample_id));
  key = mix64(key + (spec_index + 1) * kGolden);
  return RandomStream(key);
}

}  // namespace xrayaug
