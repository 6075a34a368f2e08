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

#ifndef XRAYAUG_RANDOM_H_
#define XRAYAUG_RANDOM_H_

#include <cstdint>
#include <string_view>

namespace xrayaug {

// Counter-based generator: draw n is a pure function of (key, n), so a
// stream's output never depends on what other streams did. All derived
// distributions are implemented here rather than with <random>
// distributions, whose output is implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(uint64_t key) : key_(key) {}

  uint64_t next_u64();
  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  // Uniform in [lo, hi); returns lo when lo == hi.
  double uniform(double lo, double hi);
  // Uniform integer in [0, n). Requires n >= 1.
  uint64_t uniform_index(uint64_t n);
  // Uniform integer in [lo, hi] inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi);

  uint64_t key() const { return key_; }
  uint64_t draws() const { return counter_; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

// Stable 64-bit hash (FNV-1a followed by a SplitMix64 finalizer).
uint64_t stable_hash(std::string_view bytes);

// The rng stream for one (seed, sample, spec) triple.
RandomStream derive_stream(uint64_t seed, std::string_view sample_id,
                           uint64_t spec_index);

}  // namespace xrayaug

#endif  // XRAYAUG_RANDOM_H_
