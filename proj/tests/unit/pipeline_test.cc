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

#include "xrayaug/pipeline.h"

#include <gtest/gtest.h>

#include "support/test_support.h"
#include "xrayaug/canonical_json.h"
#include "xrayaug/errors.h"

namespace xrayaug {
namespace {

PipelineConfig Parse(const std::string& text) {
  return parse_pipeline_config(parse_json(text, "config"));
}

TEST(PipelineConfigTest, DefaultsAndRoundTrip) {
  const auto cfg = Parse(R"({"seed": 7, "augmentations": [
      {"kind": "RandomCrop"}, {"kind": "Blur", "sigma_max": 1.2},
      {"kind": "ClassCutMix", "class_pair": ["straight knife", 4]}]})");
  ASSERT_EQ(cfg.specs.size(), 3u);
  EXPECT_EQ(cfg.specs[0].probability, 1.0);
  EXPECT_EQ(cfg.specs[1].probability, 0.5);
  EXPECT_EQ(cfg.specs[1].blur.sigma_max, 1.2);
  EXPECT_EQ(cfg.seed, 7u);
  const Json resolved = pipeline_config_to_json(cfg);
  EXPECT_EQ(canonical_json(pipeline_config_to_json(parse_pipeline_config(resolved))),
            canonical_json(resolved));
}

TEST(PipelineConfigTest, Rejections) {
  EXPECT_THROW(Parse(R"({"augmentations": [{"kind": "Sharpen"}]})"), ConfigError);
  EXPECT_THROW(Parse(R"({"augmentations": [{"kind": "Blur", "quality": 3}]})"), ConfigError);
  EXPECT_THROW(Parse(R"({"augmentations": [{"kind": "Blur", "probability": 1.5}]})"), ConfigError);
  EXPECT_THROW(Parse(R"({"augmentations": [{"kind": "JPEG", "quality": 0}]})"), ConfigError);
  EXPECT_THROW(Parse(R"({"augmentations": [{"kind": "ClassCutMix"}]})"), ConfigError);
  EXPECT_THROW(Parse(R"({"augmentations": [], "extra": 1})"), ConfigError);
  EXPECT_THROW(Parse(R"({"seed": -1, "augmentations": []})"), ConfigError);
}

TEST(PipelineTest, RequiresSeedAndTwoSamplesForMixers) {
  const Dataset ds = testing::synthetic_corpus(1, {16, 16}, 1);
  auto cfg = Parse(R"({"augmentations": [{"kind": "Blur"}]})");
  EXPECT_THROW(apply_pipeline(cfg, ds), ConfigError);
  cfg = Parse(R"({"seed": 1, "augmentations": [{"kind": "MixUp"}]})");
  EXPECT_THROW(apply_pipeline(cfg, ds), ConfigError);
  cfg = Parse(R"({"seed": 1, "augmentations": []})");
  EXPECT_THROW(apply_pipeline(cfg, ds), ConfigError);
}

TEST(PipelineTest, ZeroProbabilityIsIdentity) {
  const Dataset ds = testing::synthetic_corpus(10, {24, 24}, 2);
  const auto cfg = Parse(R"({"seed": 3, "augmentations": [
      {"kind": "RandomFlip", "probability": 0}, {"kind": "RandomCrop", "probability": 0},
      {"kind": "CutMix", "probability": 0}]})");
  const Dataset out = apply_pipeline(cfg, ds);
  EXPECT_EQ(serialize_dataset(out), serialize_dataset(ds));
  for (size_t i = 0; i < ds.samples.size(); ++i) {
    EXPECT_EQ(out.image(out.samples[i]), *ds.samples[i].image);
  }
}

TEST(PipelineTest, DeterministicAcrossWorkers) {
  const Dataset ds = testing::synthetic_corpus(16, {32, 32}, 4);
  const auto cfg = Parse(R"({"seed": 11, "augmentations": [
      {"kind": "RandomFlip"}, {"kind": "RandomCrop"}, {"kind": "Rotate"}, {"kind": "Blur"},
      {"kind": "Equalise"}, {"kind": "JPEG"}, {"kind": "MixUp"}, {"kind": "BboxMixUp"},
      {"kind": "CutMix"}, {"kind": "ClassCutMix", "class_pair": [2, 4]}]})");
  const Dataset a = apply_pipeline(cfg, ds, 1);
  const Dataset b = apply_pipeline(cfg, ds, 6);
  EXPECT_EQ(serialize_dataset(a), serialize_dataset(b));
  EXPECT_EQ(canonical_json(provenance_to_json(a)), canonical_json(provenance_to_json(b)));
  for (size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.image(a.samples[i]), b.image(b.samples[i]));
  }
}

TEST(PipelineTest, OutputInvariants) {
  const Dataset ds = testing::synthetic_corpus(30, {40, 30}, 6);
  const auto cfg = Parse(R"({"seed": 5, "augmentations": [
      {"kind": "RandomCrop"}, {"kind": "Rotate", "probability": 0.5},
      {"kind": "CutMix", "probability": 0.7}, {"kind": "BboxMixUp", "probability": 0.7}]})");
  PipelineStats stats;
  const Dataset out = apply_pipeline(cfg, ds, 2, &stats);
  ASSERT_EQ(out.samples.size(), ds.samples.size());
  EXPECT_EQ(stats.fired[0], ds.samples.size());
  for (const auto& s : out.samples) {
    const PixelImage img = out.image(s);
    EXPECT_EQ(img.extent(), s.extent);
    for (const auto& a : s.annotations) {
      EXPECT_TRUE(within_extent(a.box, s.extent));
      EXPECT_GT(a.weight, 0.0);
      EXPECT_LE(a.weight, 1.0);
    }
    ASSERT_TRUE(s.provenance);
    EXPECT_EQ(s.provenance->sources.at(0), s.id);
    EXPECT_GT(s.provenance->rng_draws, 0u);
  }
}

TEST(PipelineTest, ExtendModeDoublesSize) {
  const Dataset ds = testing::synthetic_corpus(5, {16, 16}, 7);
  const auto cfg = Parse(R"({"seed": 1, "output_mode": "extend",
                             "augmentations": [{"kind": "RandomFlip", "probability": 1}]})");
  const Dataset out = apply_pipeline(cfg, ds);
  ASSERT_EQ(out.samples.size(), 10u);
  size_t augmented = 0;
  for (const auto& s : out.samples) augmented += s.id.ends_with("_aug");
  EXPECT_EQ(augmented, 5u);
}

TEST(PipelineTest, BinomialFireCount) {
  Dataset ds;
  ds.classes = testing::knife_catalog();
  const auto tiny = std::make_shared<const PixelImage>(testing::solid_image({2, 2}, 1, 2, 3));
  for (int i = 0; i < 10000; ++i) {
    Sample s;
    s.id = std::to_string(i);
    s.image_path = s.id + ".png";
    s.extent = {2, 2};
    s.image = tiny;
    ds.samples.push_back(std::move(s));
  }
  const auto cfg = Parse(R"({"seed": 2026, "augmentations": [{"kind": "Equalise"}]})");
  PipelineStats stats;
  apply_pipeline(cfg, ds, 4, &stats);
  EXPECT_GE(stats.fired[0], 4700u);
  EXPECT_LE(stats.fired[0], 5300u);
}

}  // namespace
}  // namespace xrayaug
