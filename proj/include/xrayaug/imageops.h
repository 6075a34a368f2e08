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

#ifndef XRAYAUG_IMAGEOPS_H_
#define XRAYAUG_IMAGEOPS_H_

#include <span>
#include <vector>

#include "xrayaug/annotation.h"
#include "xrayaug/random.h"

namespace xrayaug {

// Standard single-image augmentations. Each takes the image and its
// annotations by value-semantics and returns a new AnnotatedImage whose
// boxes are valid and lie inside the output extent. Randomized operations
// draw only from the stream they are handed.

enum class FlipAxis { kHorizontal, kVertical };

AnnotatedImage flip(const PixelImage& image, std::span<const Annotation> anns,
                    FlipAxis axis);

// Deterministic core of random_crop. Boxes follow the crop retention rule.
AnnotatedImage crop_to_window(const PixelImage& image,
                              std::span<const Annotation> anns,
                              const PixelRect& window);

struct CropParams {
  double min_frac = 0.75;
  double max_frac = 1.0;

  void validate() const;
};

// Window side = round(u * side), u ~ U[min_frac, max_frac] drawn separately
// for width and height; offset uniform over valid positions.
PixelRect draw_crop_window(ImageExtent extent, RandomStream& rng,
                           const CropParams& params);

AnnotatedImage random_crop(const PixelImage& image,
                           std::span<const Annotation> anns, RandomStream& rng,
                           const CropParams& params = {});

// k clockwise quarter turns, k in {0, 1, 2, 3}.
AnnotatedImage rotate90(const PixelImage& image,
                        std::span<const Annotation> anns, int k);

// Clockwise rotation about the image centre by any angle; same extent,
// bilinear sampling, black fill. Boxes become clipped hulls of their
// rotated corners and are dropped if nothing remains.
AnnotatedImage rotate_by_angle(const PixelImage& image,
                               std::span<const Annotation> anns,
                               double degrees);

struct RotateParams {
  std::vector<double> angles{90.0, 180.0, 270.0};
  // Required for angles that are not multiples of 90; see rotate_by_angle.
  bool allow_arbitrary = false;

  void validate() const;
};

AnnotatedImage rotate(const PixelImage& image, std::span<const Annotation> anns,
                      RandomStream& rng, const RotateParams& params = {});

// Normalized 1-D Gaussian taps for radius ceil(3 sigma).
std::vector<double> gaussian_kernel(double sigma);

// Per-channel 2-D Gaussian (separable, accumulated in double, single final
// rounding), symmetric reflect border.
PixelImage gaussian_blur(const PixelImage& image, double sigma);

struct BlurParams {
  double sigma_min = 0.5;
  double sigma_max = 1.5;

  void validate() const;
};

AnnotatedImage blur(const PixelImage& image, std::span<const Annotation> anns,
                    RandomStream& rng, const BlurParams& params = {});

// Per-channel histogram equalization.
PixelImage equalize_histogram(const PixelImage& image);

AnnotatedImage equalize(const PixelImage& image,
                        std::span<const Annotation> anns);

// JPEG encode/decode round trip at the given quality.
AnnotatedImage jpeg_degrade(const PixelImage& image,
                            std::span<const Annotation> anns, int quality = 10);

}  // namespace xrayaug

#endif  // XRAYAUG_IMAGEOPS_H_
