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

// Synthetic fixtures and independent reference implementations used by the
// unit and acceptance suites. Nothing here calls the code paths it checks.

#ifndef XRAYAUG_TESTS_SUPPORT_TEST_SUPPORT_H_
#define XRAYAUG_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "xrayaug/dataset.h"
#include "xrayaug/evaluation.h"

namespace xrayaug::testing {

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Deterministic photo-like image: smooth colour gradients, a few hard-edged
// blobs and mild pixel noise.
PixelImage textured_image(ImageExtent extent, uint64_t seed);

PixelImage solid_image(ImageExtent extent, uint8_t r, uint8_t g, uint8_t b);

// The five OPIXray-style categories, ids 1..5.
std::vector<Category> knife_catalog();

// In-memory corpus of `count` samples with ids "0".."count-1". Each sample
// has 1-4 objects; every third sample also has a deliberately overlapping
// pair (IoU well above 0.3) so isolation gating has something to reject.
Dataset synthetic_corpus(size_t count, ImageExtent extent, uint64_t seed);

// synthetic_corpus written as PNGs plus annotations.json under `dir`.
// Returns the path of the annotation file.
std::filesystem::path write_corpus(const std::filesystem::path& dir, size_t count,
                                   ImageExtent extent, uint64_t seed);

// Byte-level comparison of two directory trees (relative paths + contents).
bool trees_identical(const std::filesystem::path& a, const std::filesystem::path& b,
                     std::string* difference = nullptr);

// ---- oracles

// IoU by counting unit cells of a `grid` x `grid` raster covered by each box.
// Boxes must have integer coordinates.
double raster_iou(const BoundingBox& a, const BoundingBox& b, int grid);

// Direct 2-D convolution with the full (non-separated) Gaussian kernel and
// symmetric-reflect border, rounded half up.
PixelImage dense_gaussian_blur(const PixelImage& image, double sigma);

// Enumerates every score-prefix cut point and takes, for each of the 101
// recall thresholds, the best precision among cut points reaching it.
double brute_force_ap(const std::vector<bool>& tp_in_score_order, size_t total_gt);

// MSE computed pixel by pixel with long double accumulation.
double brute_force_psnr(const PixelImage& a, const PixelImage& b);

double mean_abs_error(const PixelImage& a, const PixelImage& b);

}  // namespace xrayaug::testing

#endif  // XRAYAUG_TESTS_SUPPORT_TEST_SUPPORT_H_
