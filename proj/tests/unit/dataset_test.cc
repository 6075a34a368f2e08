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

#include "xrayaug/dataset.h"

#include <gtest/gtest.h>

#include "support/test_support.h"
#include "xrayaug/canonical_json.h"
#include "xrayaug/codec.h"
#include "xrayaug/errors.h"

namespace xrayaug {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

Json SmallCoco() {
  return parse_json(R"({
    "categories": [{"id": 1, "name": "folding knife"}, {"id": 2, "name": "scissor"}],
    "images": [{"id": 10, "file_name": "a.png", "width": 40, "height": 30},
               {"id": 2, "file_name": "b.png", "width": 40, "height": 30}],
    "annotations": [
      {"id": 1, "image_id": 10, "category_id": 1, "bbox": [10, 20, 30, 40]},
      {"id": 2, "image_id": 2, "category_id": 2, "bbox": [1, 1, 5, 5]}
    ]})", "inline");
}

TEST(CanonicalJsonTest, SortedKeysFixedFloats) {
  Json j = {{"b", 1.5}, {"a", {3, -0.0, 2}}, {"c", "x"}};
  EXPECT_EQ(canonical_json(j),
            "{\n  \"a\": [\n    3,\n    0.000000,\n    2\n  ],\n  \"b\": 1.500000,\n  \"c\": \"x\"\n}\n");
  EXPECT_THROW(canonical_json(Json(std::nan(""))), ParameterError);
}

TEST(CanonicalJsonTest, ParseErrorHasOffset) {
  try {
    parse_json("{\"a\": [1, 2,,]}", "bad.json");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.json"), std::string::npos);
  }
}

TEST(SampleOrderTest, NumericFirst) {
  std::vector<std::string> ids{"b", "10", "2", "a", "010x"};
  std::sort(ids.begin(), ids.end(), sample_id_less);
  EXPECT_EQ(ids, (std::vector<std::string>{"2", "10", "010x", "a", "b"}));
}

TEST(LoadTest, BoxConventionAndClipping) {
  const Dataset ds = dataset_from_json(SmallCoco(), "", true);
  ASSERT_EQ(ds.samples.size(), 2u);
  EXPECT_EQ(ds.samples[0].id, "2");
  EXPECT_EQ(ds.samples[1].id, "10");
  // [10, 20, 30, 40] on a 40x30 image is clipped to the image.
  EXPECT_EQ(ds.samples[1].annotations[0].box, (BoundingBox{10, 20, 30, 10}));
  EXPECT_EQ(ds.class_id_by_name("scissor"), 2);
}

TEST(LoadTest, UnknownCategoryNamed) {
  Json doc = SmallCoco();
  doc["annotations"][0]["category_id"] = 77;
  for (bool strict : {true, false}) {
    try {
      dataset_from_json(doc, "", strict);
      FAIL();
    } catch (const ValidationError& e) {
      ASSERT_EQ(e.offenders().size(), 1u);
      EXPECT_NE(e.offenders()[0].find("77"), std::string::npos);
    }
  }
}

TEST(LoadTest, DegenerateBoxStrictVsLenient) {
  Json doc = SmallCoco();
  doc["annotations"][1]["bbox"] = {1, 1, 0, 5};
  EXPECT_THROW(dataset_from_json(doc, "", true), ValidationError);
  std::vector<std::string> issues;
  const Dataset ds = dataset_from_json(doc, "", false, &issues);
  EXPECT_EQ(issues.size(), 1u);
  EXPECT_TRUE(ds.samples[0].annotations.empty());
}

TEST(LoadTest, MissingFileAndBadJson) {
  TempDir dir("load");
  EXPECT_THROW(load_dataset(dir.path() / "none.json", dir.path(), {}), IoError);
  const std::string junk = "{ nope";
  write_file(dir.path() / "bad.json", std::span(reinterpret_cast<const uint8_t*>(junk.data()), junk.size()));
  EXPECT_THROW(load_dataset(dir.path() / "bad.json", dir.path(), {}), ParseError);
}

TEST(LoadTest, ImageMismatchStrictAndLenient) {
  TempDir dir("mismatch");
  const fs::path ann = testing::write_corpus(dir.path(), 4, {24, 16}, 3);
  write_file(dir.path() / "images/1.png", encode_png(testing::solid_image({5, 5}, 0, 0, 0)));
  fs::remove(dir.path() / "images/2.png");
  LoadOptions strict;
  strict.strict = true;
  try {
    load_dataset(ann, dir.path(), strict);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.offenders().size(), 2u);
  }
  std::vector<std::string> issues;
  const Dataset ds = load_dataset(ann, dir.path(), {}, &issues);
  EXPECT_EQ(ds.samples.size(), 2u);
  EXPECT_EQ(issues.size(), 2u);
}

TEST(RoundTripTest, SerializeLoadSerialize) {
  TempDir dir("roundtrip");
  const Dataset original = testing::synthetic_corpus(12, {32, 24}, 5);
  const Manifest m = save_dataset(original, dir.path(), {});
  const Dataset loaded = load_dataset(dir.path() / "annotations.json", dir.path(), {.strict = true});
  EXPECT_EQ(serialize_dataset(loaded), serialize_dataset(original));
  for (size_t i = 0; i < loaded.samples.size(); ++i) {
    EXPECT_EQ(loaded.image(loaded.samples[i]), *original.samples[i].image);
    EXPECT_EQ(loaded.samples[i].annotations, original.samples[i].annotations);
  }
  uint64_t on_disk = 0;
  for (const auto& f : m.files) on_disk += fs::file_size(dir.path() / f.path);
  EXPECT_EQ(on_disk, m.total_bytes);
  EXPECT_EQ(m.files.size(), 13u);

  TempDir again("roundtrip2");
  save_dataset(loaded, again.path(), {});
  EXPECT_TRUE(testing::trees_identical(dir.path(), again.path()));
}

TEST(SaveTest, WorkerCountDoesNotMatter) {
  TempDir a("save_a"), b("save_b");
  const Dataset ds = testing::synthetic_corpus(9, {20, 20}, 8);
  save_dataset(ds, a.path(), {.workers = 1});
  save_dataset(ds, b.path(), {.workers = 4});
  std::string diff;
  EXPECT_TRUE(testing::trees_identical(a.path(), b.path(), &diff)) << diff;
}

TEST(SaveTest, JpegFormatAndUnsafePaths) {
  TempDir dir("save_jpeg");
  Dataset ds = testing::synthetic_corpus(2, {16, 16}, 1);
  SaveOptions opts;
  opts.format = ImageFormat::kJpeg;
  save_dataset(ds, dir.path(), opts);
  EXPECT_TRUE(fs::exists(dir.path() / "images/0.jpg"));
  EXPECT_EQ(output_image_path("x/y.png", ImageFormat::kJpeg), "x/y.jpg");
  ds.samples[0].image_path = "../escape.png";
  EXPECT_ANY_THROW(save_dataset(ds, dir.path(), {}));
}

TEST(ProvenanceTest, SidecarOnlyForAugmented) {
  Dataset ds = testing::synthetic_corpus(2, {8, 8}, 1);
  ds.samples[1].provenance = SampleProvenance{{"1"}, {"Blur"}, 3};
  const Json p = provenance_to_json(ds);
  EXPECT_EQ(p.size(), 1u);
  EXPECT_EQ(p["1"]["fired"][0], "Blur");
  EXPECT_EQ(serialize_dataset(ds).find("Blur"), std::string::npos);
}

}  // namespace
}  // namespace xrayaug
