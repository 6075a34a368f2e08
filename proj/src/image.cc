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

#include "xrayaug/image.h"

#include <algorithm>
#include <string>
#include <utility>

#include "xrayaug/errors.h"

namespace xrayaug {

PixelImage::PixelImage(ImageExtent extent, uint8_t fill) : extent_(extent) {
  if (!extent.valid()) throw ParameterError("image extent must be at least 1x1");
  pixels_.assign(size_t(extent.width) * extent.height * kChannels, fill);
}

PixelImage::PixelImage(ImageExtent extent, std::vector<uint8_t> pixels)
    : extent_(extent), pixels_(std::move(pixels)) {
  if (!extent.valid()) throw ParameterError("image extent must be at least 1x1");
  const size_t expected = size_t(extent.width) * extent.height * kChannels;
  if (pixels_.size() != expected) {
    throw ParameterError("pixel buffer has " + std::to_string(pixels_.size()) +
                         " bytes, expected " + std::to_string(expected));
  }
}

namespace {

struct Tap {
  int lo;
  int hi;
  double frac;
};

Tap source_tap(int dst, int dst_size, int src_size) {
  if (dst_size == src_size) return {dst, dst, 0.0};
  double s = (dst + 0.5) * double(src_size) / double(dst_size) - 0.5;
  s = std::clamp(s, 0.0, double(src_size - 1));
  const int lo = int(std::floor(s));
  const int hi = std::min(lo + 1, src_size - 1);
  return {lo, hi, s - lo};
}

}  // namespace

void bilinear_sample(const PixelImage& src, ImageExtent dst_extent, int x,
                     int y, uint8_t out[PixelImage::kChannels]) {
  const Tap tx = source_tap(x, dst_extent.width, src.width());
  const Tap ty = source_tap(y, dst_extent.height, src.height());
  for (int c = 0; c < PixelImage::kChannels; ++c) {
    const double top = src.at(tx.lo, ty.lo, c) * (1.0 - tx.frac) +
                       src.at(tx.hi, ty.lo, c) * tx.frac;
    const double bottom = src.at(tx.lo, ty.hi, c) * (1.0 - tx.frac) +
                          src.at(tx.hi, ty.hi, c) * tx.frac;
    out[c] = round_to_u8(top * (1.0 - ty.frac) + bottom * ty.frac);
  }
}

PixelImage resize_bilinear(const PixelImage& src, ImageExtent dst_extent) {
  if (src.extent() == dst_extent) return src;
  PixelImage dst(dst_extent);
  for (int y = 0; y < dst_extent.height; ++y) {
    uint8_t* row = dst.row(y);
    for (int x = 0; x < dst_extent.width; ++x) {
      bilinear_sample(src, dst_extent, x, y, row + x * PixelImage::kChannels);
    }
  }
  return dst;
}

PixelImage crop_image(const PixelImage& src, const PixelRect& rect) {
  if (rect.width < 1 || rect.height < 1 || rect.x < 0 || rect.y < 0 ||
      rect.x + rect.width > src.width() || rect.y + rect.height > src.height()) {
    throw ParameterError("crop rectangle outside image");
  }
  PixelImage dst({rect.width, rect.height});
  const size_t row_bytes = size_t(rect.width) * PixelImage::kChannels;
  for (int y = 0; y < rect.height; ++y) {
    const uint8_t* from = src.row(rect.y + y) + rect.x * PixelImage::kChannels;
    std::copy(from, from + row_bytes, dst.row(y));
  }
  return dst;
}

}  // namespace xrayaug
