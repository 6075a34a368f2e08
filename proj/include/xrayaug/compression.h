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

#ifndef XRAYAUG_COMPRESSION_H_
#define XRAYAUG_COMPRESSION_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "xrayaug/dataset.h"

namespace xrayaug {

// Peak signal-to-noise ratio of 8-bit images in dB; +infinity for identical
// images. Throws ParameterError on extent mismatch.
double psnr(const PixelImage& original, const PixelImage& degraded);

struct ImageSize {
  std::string sample_id;
  uint64_t bytes = 0;
};

struct LevelReport {
  int quality = 0;
  std::string directory;  // relative to the output root
  uint64_t total_bytes = 0;
  double ratio_vs_original = 0.0;
  std::vector<ImageSize> image_sizes;  // canonical sample order
  std::optional<double> mean_psnr_db;
  std::vector<std::string> failures;
};

struct CompressionReport {
  uint64_t original_total_bytes = 0;
  std::vector<LevelReport> levels;
};

struct CompressOptions {
  std::vector<int> levels{95, 50, 10};
  // Abort on the first codec failure instead of skipping the sample.
  bool strict = false;
  bool compute_psnr = true;
  int workers = 1;
};

struct CompressionResult {
  std::vector<Dataset> variants;  // one per level, same order as levels
  CompressionReport report;
};

// Writes out_dir/q<level>/ for every level: each image re-encoded as baseline
// JPEG at that quality under its source relative path (extension .jpg) plus
// annotations.json. Annotations are copied verbatim, so the annotation files
// of all variants are byte-identical.
CompressionResult compress_dataset(const Dataset& dataset,
                                   const std::filesystem::path& out_dir,
                                   const CompressOptions& options);

Json compression_report_to_json(const CompressionReport& report);
std::string compression_report_table(const CompressionReport& report);

}  // namespace xrayaug

#endif  // XRAYAUG_COMPRESSION_H_
