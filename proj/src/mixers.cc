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

#include "xrayaug/mixers.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "xrayaug/errors.h"

namespace xrayaug {

namespace {

constexpr int kC = PixelImage::kChannels;

std::vector<size_t> eligible_objects(const std::vector<Annotation>& anns,
                                     double threshold,
                                     std::optional<int> class_filter) {
  const auto boxes = boxes_of(anns);
  std::vector<size_t> out;
  for (size_t idx : isolated_indices(boxes, threshold)) {
    if (!class_filter || anns[idx].class_id == *class_filter) out.push_back(idx);
  }
  return out;
}

std::optional<Annotation> rescale(const Annotation& a, Scale s, ImageExtent extent,
                                  Provenance tag) {
  auto scaled = transform_box(a.box, s);
  auto clipped = clip_to_extent(*scaled, extent);
  if (!clipped) return std::nullopt;
  Annotation out = a;
  out.box = *clipped;
  out.provenance = tag;
  return out;
}

Scale scale_between(ImageExtent from, ImageExtent to) {
  return {double(to.width) / from.width, double(to.height) / from.height};
}

}  // namespace

void MixerParams::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ParameterError("lambda must be in [0, 1]");
  if (!(mask_proportion > 0.0 && mask_proportion <= 1.0)) {
    throw ParameterError("mask_proportion must be in (0, 1]");
  }
  if (!(isolation_threshold >= 0.0 && isolation_threshold <= 1.0)) {
    throw ParameterError("isolation_threshold must be in [0, 1]");
  }
}

BinaryMask BinaryMask::half_split(ImageExtent extent, double proportion,
                                  MaskSide side) {
  if (!extent.valid()) throw ParameterError("mask extent must be at least 1x1");
  if (!(proportion > 0.0 && proportion <= 1.0)) {
    throw ParameterError("mask proportion must be in (0, 1]");
  }
  const size_t w = extent.width;
  const size_t h = extent.height;
  const size_t area = w * h;
  const size_t ones =
      std::min(area, size_t(std::floor(proportion * double(area) + 0.5)));
  BinaryMask mask;
  mask.extent_ = extent;
  mask.bits_.assign(area, 0);
  for (size_t y = 0; y < h; ++y) {
    for (size_t x = 0; x < w; ++x) {
      size_t order = 0;
      switch (side) {
        case MaskSide::kLeft: order = x * h + y; break;
        case MaskSide::kRight: order = (w - 1 - x) * h + y; break;
        case MaskSide::kTop: order = y * w + x; break;
        case MaskSide::kBottom: order = (h - 1 - y) * w + x; break;
      }
      mask.bits_[y * w + x] = order < ones ? 1 : 0;
    }
  }
  return mask;
}

size_t BinaryMask::count_ones() const {
  return size_t(std::count(bits_.begin(), bits_.end(), uint8_t{1}));
}

AnnotatedImage mixup(const AnnotatedImage& x_i, const AnnotatedImage& x_j,
                     const MixerParams& params) {
  params.validate();
  const ImageExtent extent = x_i.image.extent();
  const PixelImage resized = resize_bilinear(x_j.image, extent);
  AnnotatedImage out{PixelImage(extent), {}};
  const auto a = x_i.image.pixels();
  const auto b = resized.pixels();
  auto dst = out.image.pixels();
  const double lam = params.lambda;
  for (size_t k = 0; k < dst.size(); ++k) {
    dst[k] = round_to_u8(lam * a[k] + (1.0 - lam) * b[k]);
  }
  for (Annotation ann : x_i.annotations) {
    ann.provenance = Provenance::kMixup;
    out.annotations.push_back(ann);
  }
  const Scale s = scale_between(x_j.image.extent(), extent);
  for (const auto& ann : x_j.annotations) {
    if (auto r = rescale(ann, s, extent, Provenance::kMixup)) {
      out.annotations.push_back(*r);
    }
  }
  return out;
}

MixOutcome bbox_mixup(const AnnotatedImage& x_i, const AnnotatedImage& x_j,
                      const MixerParams& params, RandomStream& rng,
                      std::optional<int> target_class) {
  params.validate();
  const auto eligible =
      eligible_objects(x_j.annotations, params.isolation_threshold, target_class);
  if (eligible.empty()) {
    throw MixerIneligible("bbox_mixup: second image has no isolated object" +
                          (target_class ? " of class " + std::to_string(*target_class)
                                        : std::string()));
  }
  const size_t chosen = eligible[rng.uniform_index(eligible.size())];
  const ImageExtent extent = x_i.image.extent();
  auto moved = rescale(x_j.annotations[chosen],
                       scale_between(x_j.image.extent(), extent), extent,
                       Provenance::kBboxMixup);
  if (!moved) throw MixerIneligible("bbox_mixup: selected object vanished on resize");

  MixOutcome outcome{x_i, {}};
  outcome.selection.object_j = chosen;
  PixelImage& img = outcome.sample.image;
  const PixelRect r = pixel_region(moved->box, extent);
  const double lam = params.lambda;
  uint8_t pj[kC];
  for (int y = r.y; y < r.y + r.height; ++y) {
    for (int x = r.x; x < r.x + r.width; ++x) {
      bilinear_sample(x_j.image, extent, x, y, pj);
      for (int c = 0; c < kC; ++c) {
        img.at(x, y, c) = round_to_u8(lam * x_i.image.at(x, y, c) + (1.0 - lam) * pj[c]);
      }
    }
  }
  outcome.sample.annotations.push_back(*moved);
  return outcome;
}

AnnotatedImage cutmix_objects(const AnnotatedImage& x_i, size_t object_i,
                              const AnnotatedImage& x_j, size_t object_j,
                              const MixerParams& params, MaskSide side,
                              Provenance tag) {
  params.validate();
  if (object_i >= x_i.annotations.size() || object_j >= x_j.annotations.size()) {
    throw ParameterError("cutmix: object index out of range");
  }
  const auto boxes_i = boxes_of(x_i.annotations);
  const auto boxes_j = boxes_of(x_j.annotations);
  const auto iso_i = isolated_indices(boxes_i, params.isolation_threshold);
  const auto iso_j = isolated_indices(boxes_j, params.isolation_threshold);
  if (std::find(iso_i.begin(), iso_i.end(), object_i) == iso_i.end() ||
      std::find(iso_j.begin(), iso_j.end(), object_j) == iso_j.end()) {
    throw MixerIneligible("cutmix: selected object is not isolated");
  }

  const Annotation& a_i = x_i.annotations[object_i];
  const Annotation& a_j = x_j.annotations[object_j];
  const PixelRect r_i = pixel_region(a_i.box, x_i.image.extent());
  const PixelRect r_j = pixel_region(a_j.box, x_j.image.extent());
  const PixelImage patch_j =
      resize_bilinear(crop_image(x_j.image, r_j), {r_i.width, r_i.height});
  const BinaryMask mask =
      BinaryMask::half_split({r_i.width, r_i.height}, params.mask_proportion, side);

  AnnotatedImage out{x_i.image, {}};
  for (int y = 0; y < r_i.height; ++y) {
    for (int x = 0; x < r_i.width; ++x) {
      if (mask.at(x, y)) continue;
      for (int c = 0; c < kC; ++c) {
        out.image.at(r_i.x + x, r_i.y + y, c) = patch_j.at(x, y, c);
      }
    }
  }

  const double p = params.mask_proportion;
  for (size_t k = 0; k < x_i.annotations.size(); ++k) {
    if (k != object_i) {
      out.annotations.push_back(x_i.annotations[k]);
      continue;
    }
    out.annotations.push_back({a_i.box, a_i.class_id, a_i.weight * p, tag});
    if (p < 1.0) {
      out.annotations.push_back({a_i.box, a_j.class_id, a_j.weight * (1.0 - p), tag});
    }
  }
  return out;
}

MixOutcome cutmix(const AnnotatedImage& x_i, const AnnotatedImage& x_j,
                  const MixerParams& params, RandomStream& rng) {
  params.validate();
  const auto elig_i = eligible_objects(x_i.annotations, params.isolation_threshold, {});
  const auto elig_j = eligible_objects(x_j.annotations, params.isolation_threshold, {});
  if (elig_i.empty() || elig_j.empty()) {
    throw MixerIneligible(std::string("cutmix: ") +
                          (elig_i.empty() ? "first" : "second") +
                          " image has no isolated object");
  }
  MixSelection sel;
  sel.object_i = elig_i[rng.uniform_index(elig_i.size())];
  sel.object_j = elig_j[rng.uniform_index(elig_j.size())];
  sel.side = MaskSide(rng.uniform_index(4));
  return {cutmix_objects(x_i, *sel.object_i, x_j, *sel.object_j, params, *sel.side),
          sel};
}

MixOutcome class_cutmix(const AnnotatedImage& x_i, const MixPool& pool,
                        std::optional<size_t> exclude, const MixerParams& params,
                        RandomStream& rng) {
  params.validate();
  if (!params.class_pair) throw ParameterError("class_cutmix: class_pair not set");
  const auto [first, second] = *params.class_pair;

  std::vector<size_t> elig_i;
  for (size_t k : eligible_objects(x_i.annotations, params.isolation_threshold, {})) {
    const int cls = x_i.annotations[k].class_id;
    if (cls == first || cls == second) elig_i.push_back(k);
  }
  if (elig_i.empty()) {
    throw MixerIneligible("class_cutmix: sample has no isolated object of class " +
                          std::to_string(first) + " or " + std::to_string(second));
  }
  MixSelection sel;
  sel.object_i = elig_i[rng.uniform_index(elig_i.size())];
  const int own = x_i.annotations[*sel.object_i].class_id;
  const int wanted = own == first ? second : first;

  std::vector<size_t> partners;
  for (size_t p = 0; p < pool.size(); ++p) {
    if (exclude && p == *exclude) continue;
    if (!eligible_objects(pool.annotations(p), params.isolation_threshold, wanted).empty()) {
      partners.push_back(p);
    }
  }
  if (partners.empty()) {
    throw MixerIneligible("class_cutmix: no partner sample with an isolated object of class " +
                          std::to_string(wanted));
  }
  sel.partner = partners[rng.uniform_index(partners.size())];
  const AnnotatedImage x_j = pool.load(*sel.partner);
  const auto elig_j = eligible_objects(x_j.annotations, params.isolation_threshold, wanted);
  sel.object_j = elig_j[rng.uniform_index(elig_j.size())];
  sel.side = MaskSide(rng.uniform_index(4));
  return {cutmix_objects(x_i, *sel.object_i, x_j, *sel.object_j, params, *sel.side,
                         Provenance::kClassCutmix),
          sel};
}

}  // namespace xrayaug
