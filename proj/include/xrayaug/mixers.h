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

#ifndef XRAYAUG_MIXERS_H_
#define XRAYAUG_MIXERS_H_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "xrayaug/annotation.h"
#include "xrayaug/random.h"

namespace xrayaug {

struct MixerParams {
  // Weight of the first image in the pixel interpolation.
  double lambda = 0.5;
  // Fraction of b_i that survives a CutMix.
  double mask_proportion = 0.5;
  // Objects are eligible for mixing only if their IoU with every co-object
  // in their own image is below this.
  double isolation_threshold = 0.3;
  // ClassCutMix pairing, as class ids.
  std::optional<std::pair<int, int>> class_pair;

  void validate() const;
};

// Which part of the box keeps b_i's pixels.
enum class MaskSide { kLeft, kRight, kTop, kBottom };

// Box-sized binary mask M. Ones mark pixels kept from b_i.
class BinaryMask {
 public:
  // Exactly round(proportion * area) ones (halves rounded up), filled from
  // `side` inward: column by column for left/right, row by row for
  // top/bottom. The ones always form one contiguous block.
  static BinaryMask half_split(ImageExtent extent, double proportion,
                               MaskSide side);

  ImageExtent extent() const { return extent_; }
  bool at(int x, int y) const { return bits_[size_t(y) * extent_.width + x] != 0; }
  size_t count_ones() const;

 private:
  ImageExtent extent_;
  std::vector<uint8_t> bits_;
};

// What a randomized mixer picked. Indices refer to the input annotation
// lists; `partner` to the pool.
struct MixSelection {
  std::optional<size_t> object_i;
  std::optional<size_t> object_j;
  std::optional<size_t> partner;
  std::optional<MaskSide> side;
};

struct MixOutcome {
  AnnotatedImage sample;
  MixSelection selection;
};

// Whole-image interpolation. x_j is resized to x_i's extent; the output
// carries the annotations of both images (x_j's scaled and clipped).
AnnotatedImage mixup(const AnnotatedImage& x_i, const AnnotatedImage& x_j,
                     const MixerParams& params);

// Interpolates one isolated object of x_j (optionally of `target_class`)
// into the same coordinates of x_i. Throws MixerIneligible if x_j has no
// such object.
MixOutcome bbox_mixup(const AnnotatedImage& x_i, const AnnotatedImage& x_j,
                      const MixerParams& params, RandomStream& rng,
                      std::optional<int> target_class = std::nullopt);

// Deterministic CutMix core. Both objects must be isolated in their own
// image, otherwise MixerIneligible.
AnnotatedImage cutmix_objects(const AnnotatedImage& x_i, size_t object_i,
                              const AnnotatedImage& x_j, size_t object_j,
                              const MixerParams& params, MaskSide side,
                              Provenance tag = Provenance::kCutmix);

MixOutcome cutmix(const AnnotatedImage& x_i, const AnnotatedImage& x_j,
                  const MixerParams& params, RandomStream& rng);

// Read-only source of partner samples for ClassCutMix.
class MixPool {
 public:
  virtual ~MixPool() = default;
  virtual size_t size() const = 0;
  virtual const std::vector<Annotation>& annotations(size_t index) const = 0;
  virtual AnnotatedImage load(size_t index) const = 0;
};

// Pool over samples already in memory.
class VectorPool : public MixPool {
 public:
  explicit VectorPool(const std::vector<AnnotatedImage>* samples)
      : samples_(samples) {}
  size_t size() const override { return samples_->size(); }
  const std::vector<Annotation>& annotations(size_t index) const override {
    return (*samples_)[index].annotations;
  }
  AnnotatedImage load(size_t index) const override { return (*samples_)[index]; }

 private:
  const std::vector<AnnotatedImage>* samples_;
};

// CutMix restricted to params.class_pair. b_i is an isolated object of
// either paired class in x_i; the partner is drawn uniformly from pool
// samples (other than `exclude`) holding an isolated object of the other
// class.
MixOutcome class_cutmix(const AnnotatedImage& x_i, const MixPool& pool,
                        std::optional<size_t> exclude, const MixerParams& params,
                        RandomStream& rng);

}  // namespace xrayaug

#endif  // XRAYAUG_MIXERS_H_
