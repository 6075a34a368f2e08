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

#include "xrayaug/imageops.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "xrayaug/codec.h"
#include "xrayaug/errors.h"

namespace xrayaug {

namespace {

constexpr int kC = PixelImage::kChannels;

std::vector<Annotation> map_annotations(std::span<const Annotation> anns,
                                        const BoxTransform& t) {
  std::vector<Annotation> out;
  out.reserve(anns.size());
  for (const auto& a : anns) {
    if (auto box = transform_box(a.box, t)) {
      Annotation mapped = a;
      mapped.box = *box;
      out.push_back(mapped);
    }
  }
  return out;
}

std::vector<Annotation> copy_annotations(std::span<const Annotation> anns) {
  return {anns.begin(), anns.end()};
}

// Symmetric reflection (... c b a | a b c ... c b a | ...), any offset.
int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

int round_half_up_int(double v) { return int(std::floor(v + 0.5)); }

}  // namespace

AnnotatedImage flip(const PixelImage& image, std::span<const Annotation> anns,
                    FlipAxis axis) {
  const int w = image.width();
  const int h = image.height();
  PixelImage out(image.extent());
  for (int y = 0; y < h; ++y) {
    const int sy = axis == FlipAxis::kVertical ? h - 1 - y : y;
    const uint8_t* src = image.row(sy);
    uint8_t* dst = out.row(y);
    if (axis == FlipAxis::kVertical) {
      std::copy(src, src + size_t(w) * kC, dst);
      continue;
    }
    for (int x = 0; x < w; ++x) {
      std::copy(src + (w - 1 - x) * kC, src + (w - x) * kC, dst + x * kC);
    }
  }
  const BoxTransform t = axis == FlipAxis::kHorizontal
                             ? BoxTransform{HFlip{image.extent()}}
                             : BoxTransform{VFlip{image.extent()}};
  return {std::move(out), map_annotations(anns, t)};
}

AnnotatedImage crop_to_window(const PixelImage& image,
                              std::span<const Annotation> anns,
                              const PixelRect& window) {
  // transform_box validates the window; do it before touching pixels.
  auto mapped = map_annotations(anns, Crop{image.extent(), window});
  return {crop_image(image, window), std::move(mapped)};
}

void CropParams::validate() const {
  if (!(min_frac > 0.0 && min_frac <= max_frac && max_frac <= 1.0)) {
    throw ParameterError("crop fractions must satisfy 0 < min <= max <= 1");
  }
}

PixelRect draw_crop_window(ImageExtent extent, RandomStream& rng,
                           const CropParams& params) {
  params.validate();
  const double uw = rng.uniform(params.min_frac, params.max_frac);
  const double uh = rng.uniform(params.min_frac, params.max_frac);
  const int w = std::clamp(round_half_up_int(uw * extent.width), 1, extent.width);
  const int h = std::clamp(round_half_up_int(uh * extent.height), 1, extent.height);
  const int x = int(rng.uniform_int(0, extent.width - w));
  const int y = int(rng.uniform_int(0, extent.height - h));
  return {x, y, w, h};
}

AnnotatedImage random_crop(const PixelImage& image,
                           std::span<const Annotation> anns, RandomStream& rng,
                           const CropParams& params) {
  if (image.width() < 2 || image.height() < 2) {
    throw ParameterError("random_crop needs an image of at least 2x2");
  }
  return crop_to_window(image, anns, draw_crop_window(image.extent(), rng, params));
}

AnnotatedImage rotate90(const PixelImage& image,
                        std::span<const Annotation> anns, int k) {
  k = ((k % 4) + 4) % 4;
  if (k == 0) return {image, copy_annotations(anns)};
  const int w = image.width();
  const int h = image.height();
  const ImageExtent out_extent = (k == 2) ? image.extent() : ImageExtent{h, w};
  PixelImage out(out_extent);
  for (int y = 0; y < out_extent.height; ++y) {
    uint8_t* dst = out.row(y);
    for (int x = 0; x < out_extent.width; ++x) {
      int sx, sy;
      switch (k) {
        case 1: sx = y; sy = h - 1 - x; break;
        case 2: sx = w - 1 - x; sy = h - 1 - y; break;
        default: sx = w - 1 - y; sy = x; break;
      }
      const uint8_t* src = image.row(sy) + sx * kC;
      std::copy(src, src + kC, dst + x * kC);
    }
  }
  return {std::move(out), map_annotations(anns, Rotate90{image.extent(), k})};
}

AnnotatedImage rotate_by_angle(const PixelImage& image,
                               std::span<const Annotation> anns,
                               double degrees) {
  const double rad = degrees * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double cx = image.width() / 2.0;
  const double cy = image.height() / 2.0;
  PixelImage out(image.extent());
  auto fetch = [&](int x, int y, int ch) -> double {
    if (x < 0 || y < 0 || x >= image.width() || y >= image.height()) return 0.0;
    return image.at(x, y, ch);
  };
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      // Inverse rotation of the destination pixel centre.
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      const double sx = cx + c * dx + s * dy - 0.5;
      const double sy = cy - s * dx + c * dy - 0.5;
      const int x0 = int(std::floor(sx));
      const int y0 = int(std::floor(sy));
      const double fx = sx - x0;
      const double fy = sy - y0;
      for (int ch = 0; ch < kC; ++ch) {
        const double top = fetch(x0, y0, ch) * (1 - fx) + fetch(x0 + 1, y0, ch) * fx;
        const double bot = fetch(x0, y0 + 1, ch) * (1 - fx) + fetch(x0 + 1, y0 + 1, ch) * fx;
        out.at(x, y, ch) = round_to_u8(top * (1 - fy) + bot * fy);
      }
    }
  }
  std::vector<Annotation> mapped;
  for (const auto& a : anns) {
    if (auto box = rotate_box_hull(a.box, image.extent(), degrees)) {
      Annotation m = a;
      m.box = *box;
      mapped.push_back(m);
    }
  }
  return {std::move(out), std::move(mapped)};
}

namespace {

std::optional<int> quarter_turns(double degrees) {
  const double turns = degrees / 90.0;
  if (turns != std::floor(turns)) return std::nullopt;
  return ((int(std::fmod(turns, 4.0)) % 4) + 4) % 4;
}

}  // namespace

void RotateParams::validate() const {
  if (angles.empty()) throw ParameterError("rotate: angle set is empty");
  for (double a : angles) {
    if (!std::isfinite(a)) throw ParameterError("rotate: non-finite angle");
    if (!allow_arbitrary && !quarter_turns(a)) {
      throw ParameterError("rotate: angle " + std::to_string(a) +
                           " is not a multiple of 90 and arbitrary angles are disabled");
    }
  }
}

AnnotatedImage rotate(const PixelImage& image, std::span<const Annotation> anns,
                      RandomStream& rng, const RotateParams& params) {
  params.validate();
  const double angle = params.angles[rng.uniform_index(params.angles.size())];
  if (auto k = quarter_turns(angle)) return rotate90(image, anns, *k);
  return rotate_by_angle(image, anns, angle);
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw ParameterError("blur sigma must be positive");
  const int radius = int(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-(double(i) * i) / (2.0 * sigma * sigma));
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;
  return k;
}

PixelImage gaussian_blur(const PixelImage& image, double sigma) {
  const std::vector<double> k = gaussian_kernel(sigma);
  const int radius = int(k.size() / 2);
  const int w = image.width();
  const int h = image.height();
  std::vector<int> xs(w + 2 * radius), ys(h + 2 * radius);
  for (int i = 0; i < int(xs.size()); ++i) xs[i] = reflect_index(i - radius, w);
  for (int i = 0; i < int(ys.size()); ++i) ys[i] = reflect_index(i - radius, h);

  std::vector<double> horizontal(size_t(w) * h * kC);
  for (int y = 0; y < h; ++y) {
    const uint8_t* src = image.row(y);
    double* dst = horizontal.data() + size_t(y) * w * kC;
    for (int x = 0; x < w; ++x) {
      double acc[kC] = {0.0, 0.0, 0.0};
      for (int t = 0; t < int(k.size()); ++t) {
        const uint8_t* p = src + xs[x + t] * kC;
        for (int c = 0; c < kC; ++c) acc[c] += k[t] * p[c];
      }
      for (int c = 0; c < kC; ++c) dst[x * kC + c] = acc[c];
    }
  }
  PixelImage out(image.extent());
  const size_t stride = size_t(w) * kC;
  for (int y = 0; y < h; ++y) {
    uint8_t* dst = out.row(y);
    for (int i = 0; i < w * kC; ++i) {
      double acc = 0.0;
      for (int t = 0; t < int(k.size()); ++t) {
        acc += k[t] * horizontal[size_t(ys[y + t]) * stride + i];
      }
      dst[i] = round_to_u8(acc);
    }
  }
  return out;
}

void BlurParams::validate() const {
  if (!(sigma_min > 0.0 && sigma_min <= sigma_max)) {
    throw ParameterError("blur sigma range must satisfy 0 < min <= max");
  }
}

AnnotatedImage blur(const PixelImage& image, std::span<const Annotation> anns,
                    RandomStream& rng, const BlurParams& params) {
  params.validate();
  const double sigma = rng.uniform(params.sigma_min, params.sigma_max);
  return {gaussian_blur(image, sigma), copy_annotations(anns)};
}

PixelImage equalize_histogram(const PixelImage& image) {
  PixelImage out = image;
  const uint64_t n = uint64_t(image.width()) * image.height();
  const auto src = image.pixels();
  auto dst = out.pixels();
  for (int c = 0; c < kC; ++c) {
    std::array<uint64_t, 256> hist{};
    for (size_t i = c; i < src.size(); i += kC) ++hist[src[i]];
    const int distinct = int(std::count_if(hist.begin(), hist.end(),
                                           [](uint64_t v) { return v > 0; }));
    if (distinct <= 1) continue;
    std::array<uint8_t, 256> lut{};
    uint64_t cdf = 0;
    uint64_t cdf_min = 0;
    for (int v = 0; v < 256; ++v) {
      cdf += hist[v];
      if (cdf_min == 0 && cdf > 0) cdf_min = cdf;
      // round(255 * num / den) with halves rounded up, in exact integers.
      const uint64_t num = cdf - cdf_min;
      const uint64_t den = n - cdf_min;
      lut[v] = cdf == 0 ? 0 : uint8_t((2 * 255 * num + den) / (2 * den));
    }
    for (size_t i = c; i < dst.size(); i += kC) dst[i] = lut[src[i]];
  }
  return out;
}

AnnotatedImage equalize(const PixelImage& image,
                        std::span<const Annotation> anns) {
  return {equalize_histogram(image), copy_annotations(anns)};
}

AnnotatedImage jpeg_degrade(const PixelImage& image,
                            std::span<const Annotation> anns, int quality) {
  PixelImage decoded = decode_jpeg(encode_jpeg(image, quality));
  if (decoded.extent() != image.extent()) {
    throw CodecError("jpeg round trip changed the image extent");
  }
  return {std::move(decoded), copy_annotations(anns)};
}

}  // namespace xrayaug
