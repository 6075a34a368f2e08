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

#ifndef XRAYAUG_IMAGE_H_
#define XRAYAUG_IMAGE_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "xrayaug/geometry.h"

namespace xrayaug {

// 8-bit RGB raster, row-major, interleaved channels.
class PixelImage {
 public:
  static constexpr int kChannels = 3;

  PixelImage() = default;
  explicit PixelImage(ImageExtent extent, uint8_t fill = 0);
  // Throws ParameterError unless pixels.size() == width * height * 3.
  PixelImage(ImageExtent extent, std::vector<uint8_t> pixels);

  ImageExtent extent() const { return extent_; }
  int width() const { return extent_.width; }
  int height() const { return extent_.height; }
  bool empty() const { return pixels_.empty(); }

  std::span<const uint8_t> pixels() const { return pixels_; }
  std::span<uint8_t> pixels() { return pixels_; }

  uint8_t* row(int y) { return pixels_.data() + size_t(y) * width() * kChannels; }
  const uint8_t* row(int y) const {
    return pixels_.data() + size_t(y) * width() * kChannels;
  }

  uint8_t at(int x, int y, int c) const { return row(y)[x * kChannels + c]; }
  uint8_t& at(int x, int y, int c) { return row(y)[x * kChannels + c]; }

  bool operator==(const PixelImage&) const = default;

 private:
  ImageExtent extent_;
  std::vector<uint8_t> pixels_;
};

// The single rounding rule used wherever a real value becomes an 8-bit
// channel: round half up, saturate to [0, 255].
inline uint8_t round_to_u8(double v) {
  const double r = std::floor(v + 0.5);
  if (r <= 0.0) return 0;
  if (r >= 255.0) return 255;
  return uint8_t(r);
}

// One output pixel of a bilinear resize of `src` to `dst_extent`, using
// half-pixel-centre alignment and edge clamping. Writes three channels.
void bilinear_sample(const PixelImage& src, ImageExtent dst_extent, int x,
                     int y, uint8_t out[PixelImage::kChannels]);

PixelImage resize_bilinear(const PixelImage& src, ImageExtent dst_extent);

// Throws ParameterError if `rect` is not inside the image.
PixelImage crop_image(const PixelImage& src, const PixelRect& rect);

}  // namespace xrayaug

#endif  // XRAYAUG_IMAGE_H_
