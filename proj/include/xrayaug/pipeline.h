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

#ifndef XRAYAUG_PIPELINE_H_
#define XRAYAUG_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xrayaug/dataset.h"
#include "xrayaug/imageops.h"
#include "xrayaug/mixers.h"
#include "xrayaug/random.h"

namespace xrayaug {

enum class AugmentKind {
  kRandomFlip,
  kRandomCrop,
  kRotate,
  kBlur,
  kEqualise,
  kJpeg,
  kMixUp,
  kBboxMixUp,
  kCutMix,
  kClassCutMix,
};

std::string_view to_string(AugmentKind kind);
std::optional<AugmentKind> augment_kind_from_string(std::string_view name);
bool is_mixer(AugmentKind kind);

// A class named in a config, by catalog id or by name.
struct ClassRef {
  std::optional<int> id;
  std::string name;

  int resolve(const Dataset& dataset) const;
};

struct AugmentSpec {
  AugmentKind kind = AugmentKind::kRandomFlip;
  double probability = 0.5;

  std::vector<FlipAxis> flip_axes{FlipAxis::kHorizontal, FlipAxis::kVertical};
  CropParams crop;
  RotateParams rotate;
  BlurParams blur;
  int jpeg_quality = 10;
  MixerParams mixer;
  std::optional<ClassRef> target_class;                      // BboxMixUp
  std::optional<std::pair<ClassRef, ClassRef>> class_pair;   // ClassCutMix

  // Defaults for `kind`. RandomCrop always fires, so its probability is 1.
  static AugmentSpec Defaults(AugmentKind kind);
  void validate() const;
};

enum class OutputMode { kTransform, kExtend };

struct PipelineConfig {
  // Required before a run; the CLI may supply it instead of the file.
  std::optional<uint64_t> seed;
  std::vector<AugmentSpec> specs;
  OutputMode output_mode = OutputMode::kTransform;

  void validate() const;
};

PipelineConfig parse_pipeline_config(const Json& doc);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
// Fully resolved form, every default spelled out.
Json pipeline_config_to_json(const PipelineConfig& config);

struct PipelineStats {
  std::vector<uint64_t> fired;       // per spec: probability draw succeeded
  std::vector<uint64_t> ineligible;  // per spec: mixer fired but passed through
};

// Applies `config` to every sample. Each (sample, spec) pair draws from its
// own derive_stream(seed, sample id, spec index), so the result does not
// depend on `workers`. Throws ConfigError for an invalid config, a missing
// seed, or a mixer on a dataset with fewer than two samples.
Dataset apply_pipeline(const PipelineConfig& config, const Dataset& dataset,
                       int workers = 1, PipelineStats* stats = nullptr);

}  // namespace xrayaug

#endif  // XRAYAUG_PIPELINE_H_
