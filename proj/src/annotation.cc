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

#include "xrayaug/annotation.h"

#include <array>
#include <utility>

namespace xrayaug {

namespace {

constexpr std::array<std::pair<Provenance, std::string_view>, 5> kNames = {{
    {Provenance::kOriginal, "original"},
    {Provenance::kMixup, "mixup"},
    {Provenance::kBboxMixup, "bbox_mixup"},
    {Provenance::kCutmix, "cutmix"},
    {Provenance::kClassCutmix, "class_cutmix"},
}};

}  // namespace

std::string_view to_string(Provenance p) {
  for (const auto& [value, name] : kNames) {
    if (value == p) return name;
  }
  return "original";
}

std::optional<Provenance> provenance_from_string(std::string_view s) {
  for (const auto& [value, name] : kNames) {
    if (name == s) return value;
  }
  return std::nullopt;
}

std::vector<BoundingBox> boxes_of(const std::vector<Annotation>& annotations) {
  std::vector<BoundingBox> out;
  out.reserve(annotations.size());
  for (const auto& a : annotations) out.push_back(a.box);
  return out;
}

}  // namespace xrayaug
