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

#include <gtest/gtest.h>

#include <cmath>

#include "support/test_support.h"
#include "xrayaug/errors.h"

namespace xrayaug {
namespace {

using testing::solid_image;
using testing::textured_image;

std::vector<Annotation> SomeBoxes() {
  return {{{3, 4, 10, 6}, 1}, {{20, 2, 5, 17}, 2}, {{0, 0, 40, 30}, 3}};
}

TEST(FlipTest, ThreePixelRow) {
  PixelImage img({3, 1}, std::vector<uint8_t>{1, 1, 1, 2, 2, 2, 3, 3, 3});
  const auto out = flip(img, {}, FlipAxis::kHorizontal);
  EXPECT_EQ(out.image, PixelImage({3, 1}, std::vector<uint8_t>{3, 3, 3, 2, 2, 2, 1, 1, 1}));
}

TEST(FlipTest, HalvesSwap) {
  PixelImage img({4, 2});
  for (int y = 0; y < 2; ++y)
    for (int x = 2; x < 4; ++x)
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = 255;
  const auto out = flip(img, {}, FlipAxis::kHorizontal);
  EXPECT_EQ(out.image.at(0, 0, 0), 255);
  EXPECT_EQ(out.image.at(3, 1, 0), 0);
}

TEST(FlipTest, Involution) {
  const PixelImage img = textured_image({40, 30}, 9);
  const auto anns = SomeBoxes();
  for (auto axis : {FlipAxis::kHorizontal, FlipAxis::kVertical}) {
    const auto once = flip(img, anns, axis);
    EXPECT_NE(once.image, img);
    const auto twice = flip(once.image, once.annotations, axis);
    EXPECT_EQ(twice.image, img);
    EXPECT_EQ(twice.annotations, anns);
  }
}

TEST(CropTest, FullWindowIsIdentity) {
  const PixelImage img = textured_image({40, 30}, 2);
  const auto anns = SomeBoxes();
  const auto out = crop_to_window(img, anns, {0, 0, 40, 30});
  EXPECT_EQ(out.image, img);
  EXPECT_EQ(out.annotations, anns);
}

TEST(CropTest, RetentionExample) {
  const PixelImage img = textured_image({100, 100}, 4);
  const std::vector<Annotation> anns{{{0, 0, 20, 20}, 1}, {{95, 95, 4, 4}, 2}};
  const auto out = crop_to_window(img, anns, {10, 10, 80, 80});
  ASSERT_EQ(out.annotations.size(), 1u);
  EXPECT_EQ(out.annotations[0].box, (BoundingBox{0, 0, 10, 10}));
  EXPECT_EQ(out.image.extent(), (ImageExtent{80, 80}));
  EXPECT_EQ(out.image.at(0, 0, 0), img.at(10, 10, 0));
}

TEST(CropTest, RandomWindowWithinFractions) {
  const ImageExtent e{200, 120};
  for (uint64_t k = 0; k < 500; ++k) {
    RandomStream rng(k);
    const PixelRect w = draw_crop_window(e, rng, {});
    EXPECT_GE(w.width, 150);
    EXPECT_LE(w.width, 200);
    EXPECT_GE(w.height, 90);
    EXPECT_LE(w.height, 120);
    EXPECT_GE(w.x, 0);
    EXPECT_GE(w.y, 0);
    EXPECT_LE(w.x + w.width, e.width);
    EXPECT_LE(w.y + w.height, e.height);
  }
  RandomStream rng(1);
  EXPECT_THROW(random_crop(PixelImage({1, 5}), {}, rng), ParameterError);
  EXPECT_THROW((CropParams{0.9, 0.8}.validate()), ParameterError);
}

TEST(RotateTest, QuarterTurnPixelsAndExtent) {
  // 2x1 image [A, B] turned clockwise becomes a 1x2 column [A; B].
  PixelImage img({2, 1}, std::vector<uint8_t>{10, 10, 10, 20, 20, 20});
  const auto out = rotate90(img, {}, 1);
  EXPECT_EQ(out.image.extent(), (ImageExtent{1, 2}));
  EXPECT_EQ(out.image.at(0, 0, 0), 10);
  EXPECT_EQ(out.image.at(0, 1, 0), 20);
}

TEST(RotateTest, QuarterTurnMovesPixelsWithBoxes) {
  // A bright block under a box must stay under the box after rotation.
  PixelImage img({30, 20});
  const std::vector<Annotation> anns{{{4, 3, 6, 5}, 1}};
  for (int y = 3; y < 8; ++y)
    for (int x = 4; x < 10; ++x) img.at(x, y, 0) = 255;
  for (int k = 1; k < 4; ++k) {
    const auto out = rotate90(img, anns, k);
    const BoundingBox& b = out.annotations.at(0).box;
    int inside = 0, total = 0;
    for (int y = 0; y < out.image.height(); ++y) {
      for (int x = 0; x < out.image.width(); ++x) {
        if (out.image.at(x, y, 0) != 255) continue;
        ++total;
        inside += x >= b.x_min && x < b.x_max() && y >= b.y_min && y < b.y_max();
      }
    }
    EXPECT_EQ(total, 30);
    EXPECT_EQ(inside, 30) << "k=" << k;
  }
}

TEST(RotateTest, Involutions) {
  const PixelImage img = textured_image({37, 23}, 6);
  const auto anns = SomeBoxes();
  const auto half = rotate90(img, anns, 2);
  const auto back = rotate90(half.image, half.annotations, 2);
  EXPECT_EQ(back.image, img);
  EXPECT_EQ(back.annotations, anns);
  AnnotatedImage cur{img, anns};
  for (int i = 0; i < 4; ++i) cur = rotate90(cur.image, cur.annotations, 1);
  EXPECT_EQ(cur.image, img);
  EXPECT_EQ(cur.annotations, anns);
}

TEST(RotateTest, DefaultAnglesAreRightAngles) {
  const PixelImage img = textured_image({20, 10}, 1);
  for (uint64_t k = 0; k < 50; ++k) {
    RandomStream rng(k);
    const auto out = rotate(img, {}, rng);
    EXPECT_NE(out.image, img);
  }
  EXPECT_THROW((RotateParams{{45.0}, false}.validate()), ParameterError);
  EXPECT_NO_THROW((RotateParams{{45.0}, true}.validate()));
}

TEST(RotateTest, ArbitraryAngleKeepsBoxesInside) {
  const PixelImage img = textured_image({64, 48}, 8);
  const auto out = rotate_by_angle(img, SomeBoxes(), 30.0);
  EXPECT_EQ(out.image.extent(), img.extent());
  for (const auto& a : out.annotations) EXPECT_TRUE(within_extent(a.box, img.extent()));
}

TEST(BlurTest, KernelNormalized) {
  for (double s : {0.5, 0.8, 1.0, 1.5}) {
    const auto k = gaussian_kernel(s);
    EXPECT_EQ(k.size(), size_t(2 * std::ceil(3 * s) + 1));
    double sum = 0;
    for (double v : k) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(BlurTest, ConstantImageUnchanged) {
  const PixelImage img = solid_image({15, 12}, 17, 128, 250);
  EXPECT_EQ(gaussian_blur(img, 1.3), img);
}

TEST(BlurTest, ImpulseCentreMatchesDenseOracle) {
  for (double sigma : {0.5, 1.0, 1.5}) {
    PixelImage img({21, 21});
    for (int c = 0; c < 3; ++c) img.at(10, 10, c) = 255;
    const PixelImage fast = gaussian_blur(img, sigma);
    const PixelImage dense = testing::dense_gaussian_blur(img, sigma);
    const int r = int(std::ceil(3 * sigma));
    double total = 0;
    for (int i = -r; i <= r; ++i)
      for (int j = -r; j <= r; ++j) total += std::exp(-(i * i + j * j) / (2 * sigma * sigma));
    const double centre_weight = 1.0 / total;
    EXPECT_EQ(fast.at(10, 10, 0), round_to_u8(255.0 * centre_weight)) << sigma;
    EXPECT_EQ(fast, dense) << sigma;
  }
}

TEST(BlurTest, TexturedImageMatchesDenseOracle) {
  const PixelImage img = textured_image({48, 40}, 12);
  for (double sigma : {0.5, 0.9, 1.5}) {
    const PixelImage fast = gaussian_blur(img, sigma);
    const PixelImage dense = testing::dense_gaussian_blur(img, sigma);
    size_t differing = 0;
    for (size_t i = 0; i < fast.pixels().size(); ++i) {
      const int d = std::abs(int(fast.pixels()[i]) - int(dense.pixels()[i]));
      EXPECT_LE(d, 1);
      differing += d != 0;
    }
    EXPECT_LE(differing, fast.pixels().size() / 1000);
  }
}

TEST(BlurTest, SumConservedWithinRounding) {
  const PixelImage img = textured_image({32, 24}, 13);
  const PixelImage out = gaussian_blur(img, 1.2);
  for (int c = 0; c < 3; ++c) {
    long before = 0, after = 0;
    for (int y = 0; y < 24; ++y)
      for (int x = 0; x < 32; ++x) {
        before += img.at(x, y, c);
        after += out.at(x, y, c);
      }
    EXPECT_LE(std::abs(before - after), 32 * 24);
  }
}

TEST(BlurTest, SigmaDrawnInRange) {
  EXPECT_THROW((BlurParams{1.5, 0.5}.validate()), ParameterError);
  EXPECT_THROW((BlurParams{0.0, 0.5}.validate()), ParameterError);
  const auto anns = SomeBoxes();
  RandomStream rng(5);
  const auto out = blur(textured_image({40, 30}, 1), anns, rng);
  EXPECT_EQ(out.annotations, anns);
  EXPECT_EQ(out.image.extent(), (ImageExtent{40, 30}));
}

TEST(EqualizeTest, TwoLevelChannel) {
  PixelImage img({2, 2});
  const uint8_t values[] = {100, 200, 200, 100};
  for (int i = 0; i < 4; ++i) img.at(i % 2, i / 2, 0) = values[i];
  const PixelImage out = equalize_histogram(img);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(out.at(i % 2, i / 2, 0), values[i] == 100 ? 0 : 255);
  // Constant channels are left alone.
  EXPECT_EQ(out.at(0, 0, 1), 0);
}

TEST(EqualizeTest, MatchesCdfFormulaAndPreservesOrder) {
  const PixelImage img = textured_image({30, 20}, 21);
  const PixelImage out = equalize_histogram(img);
  for (int c = 0; c < 3; ++c) {
    std::vector<double> cdf(256, 0.0);
    for (int y = 0; y < 20; ++y)
      for (int x = 0; x < 30; ++x) cdf[img.at(x, y, c)] += 1;
    for (int v = 1; v < 256; ++v) cdf[v] += cdf[v - 1];
    double cdf_min = 0;
    for (double v : cdf)
      if (v > 0) {
        cdf_min = v;
        break;
      }
    for (int y = 0; y < 20; ++y)
      for (int x = 0; x < 30; ++x) {
        const int v = img.at(x, y, c);
        EXPECT_EQ(out.at(x, y, c), round_to_u8(255.0 * (cdf[v] - cdf_min) / (600.0 - cdf_min)));
      }
  }
  for (int i = 1; i < 600; ++i) {
    const uint8_t a = img.pixels()[3 * (i - 1)], b = img.pixels()[3 * i];
    if (a <= b) {
      EXPECT_LE(out.pixels()[3 * (i - 1)], out.pixels()[3 * i]);
    }
  }
}

TEST(JpegTest, MidGrayStaysClose) {
  const PixelImage gray = solid_image({32, 32}, 128, 128, 128);
  for (int q : {1, 10, 50, 95, 100}) {
    const auto out = jpeg_degrade(gray, {}, q);
    for (uint8_t v : out.image.pixels()) EXPECT_LE(std::abs(int(v) - 128), 2) << q;
  }
}

TEST(JpegTest, LowerQualityMoreError) {
  const PixelImage img = textured_image({96, 64}, 31);
  const auto anns = SomeBoxes();
  const auto q10 = jpeg_degrade(img, anns, 10);
  const auto q95 = jpeg_degrade(img, anns, 95);
  EXPECT_GT(testing::mean_abs_error(img, q10.image), testing::mean_abs_error(img, q95.image));
  EXPECT_EQ(q10.annotations, anns);
}

}  // namespace
}  // namespace xrayaug
