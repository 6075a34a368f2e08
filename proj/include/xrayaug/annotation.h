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

#ifndef XRAYAUG_ANNOTATION_H_
#define XRAYAUG_ANNOTATION_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xrayaug/geometry.h"
#include "xrayaug/image.h"

namespace xrayaug {

enum class Provenance { kOriginal, kMixup, kBboxMixup, kCutmix, kClassCutmix };

std::string_view to_string(Provenance p);
std::optional<Provenance> provenance_from_string(std::string_view s);

struct Annotation {
  BoundingBox box;
  int class_id = 0;
  // In (0, 1]. Below 1 only for split-label CutMix boxes.
  double weight = 1.0;
  Provenance provenance = Provenance::kOriginal;

  bool operator==(const Annotation&) const = default;
};

// An image with its targets: the unit every augmentation consumes and
// produces.
struct AnnotatedImage {
  PixelImage image;
  std::vector<Annotation> annotations;

  bool operator==(const AnnotatedImage&) const = default;
};

std::vector<BoundingBox> boxes_of(const std::vector<Annotation>& annotations);

}  // namespace xrayaug

#endif  // XRAYAUG_ANNOTATION_H_
