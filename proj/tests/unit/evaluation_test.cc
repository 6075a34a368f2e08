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

#include "xrayaug/evaluation.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/test_support.h"
#include "xrayaug/canonical_json.h"
#include "xrayaug/errors.h"

namespace xrayaug {
namespace {

std::vector<LabeledDetection> Labels(const std::vector<bool>& tp) {
  std::vector<LabeledDetection> out;
  for (size_t i = 0; i < tp.size(); ++i) out.push_back({1.0 - 0.01 * double(i), tp[i], i});
  return out;
}

TEST(MatchTest, GreedyHighestScoreWins) {
  const BoundingBox gt[] = {{0, 0, 10, 10}};
  const Detection dets[] = {{"a", {0, 0, 10, 9}, 1, 0.4}, {"a", {0, 0, 10, 10}, 1, 0.9}};
  const auto r = match_detections(gt, dets);
  ASSERT_EQ(r.labeled.size(), 2u);
  EXPECT_TRUE(r.labeled[0].true_positive);
  EXPECT_EQ(r.labeled[0].order, 1u);
  EXPECT_FALSE(r.labeled[1].true_positive);
  EXPECT_EQ(r.false_positives, 1u);
  EXPECT_EQ(r.false_negatives, 0u);
}

TEST(MatchTest, BoundaryAndEmpty) {
  const BoundingBox gt[] = {{0, 0, 4, 3}};
  const Detection half[] = {{"a", {0, 0, 2, 3}, 1, 0.5}};  // IoU exactly 0.5
  EXPECT_EQ(match_detections(gt, half).true_positives, 1u);
  EXPECT_EQ(match_detections(gt, half, 0.51).true_positives, 0u);
  const auto none = match_detections(gt, {});
  EXPECT_EQ(none.false_negatives, 1u);
}

TEST(MatchTest, TiesKeepInputOrder) {
  const BoundingBox gt[] = {{0, 0, 10, 10}};
  const Detection dets[] = {{"a", {0, 0, 10, 10}, 1, 0.5}, {"a", {0, 0, 10, 10}, 1, 0.5}};
  const auto r = match_detections(gt, dets);
  EXPECT_TRUE(r.labeled[0].true_positive);
  EXPECT_EQ(r.labeled[0].order, 0u);
}

TEST(ApTest, WorkedExample) {
  const auto labels = Labels({true, false, true});
  const double expected = (51.0 + 50.0 * 2.0 / 3.0) / 101.0;
  EXPECT_NEAR(testing::brute_force_ap({true, false, true}, 2), expected, 1e-12);
  EXPECT_NEAR(average_precision(labels, 2), expected, 1e-9);
}

TEST(ApTest, TrivialCases) {
  EXPECT_EQ(average_precision(Labels({true, true, true}), 3), 1.0);
  EXPECT_EQ(average_precision({}, 4), 0.0);
  EXPECT_EQ(average_precision(Labels({false, false}), 0), 0.0);
}

TEST(ApTest, MatchesBruteForce) {
  std::mt19937_64 eng(99);
  for (int t = 0; t < 2000; ++t) {
    const size_t gt = 1 + eng() % 5;
    const size_t n = eng() % 9;
    std::vector<bool> tp(n);
    size_t hits = 0;
    for (size_t i = 0; i < n; ++i) {
      tp[i] = hits < gt && eng() % 2;
      hits += tp[i];
    }
    EXPECT_NEAR(average_precision(Labels(tp), gt), testing::brute_force_ap(tp, gt), 1e-9);
  }
}

Dataset TwoImageGt() {
  Dataset gt;
  gt.classes = {{1, "knife"}, {2, "scissor"}, {3, "pliers"}};
  for (int i = 0; i < 2; ++i) {
    Sample s;
    s.id = std::to_string(i);
    s.image_path = s.id + ".png";
    s.extent = {100, 100};
    s.annotations = {{{10, 10, 20, 20}, 1}, {{50, 50, 30, 30}, 2}};
    gt.samples.push_back(s);
  }
  return gt;
}

TEST(EvaluateTest, MonotoneScoreInvariance) {
  const Dataset gt = TwoImageGt();
  std::vector<Detection> dets{{"0", {10, 10, 20, 20}, 1, 0.9}, {"0", {60, 60, 5, 5}, 1, 0.8},
                              {"1", {11, 10, 20, 20}, 1, 0.3}, {"1", {50, 50, 30, 30}, 2, 0.6},
                              {"0", {0, 0, 5, 5}, 2, 0.7}};
  const ModelMeta meta{"m", 10.0, {}, {}};
  const EvalReport base = evaluate(gt, dets, meta);
  for (auto& d : dets) d.score = std::pow(d.score, 3) * 0.5;
  const EvalReport warped = evaluate(gt, dets, meta);
  EXPECT_DOUBLE_EQ(base.map, warped.map);
  EXPECT_GE(base.map, 0.0);
  EXPECT_LE(base.map, 1.0);
}

TEST(EvaluateTest, DuplicatesNeverIncreaseAp) {
  const Dataset gt = TwoImageGt();
  std::mt19937_64 eng(4);
  for (int t = 0; t < 200; ++t) {
    std::vector<Detection> dets;
    for (int k = 0; k < 5; ++k) {
      dets.push_back({std::to_string(eng() % 2),
                      {double(eng() % 60), double(eng() % 60), double(5 + eng() % 30), double(5 + eng() % 30)},
                      int(1 + eng() % 2),
                      double(eng() % 1000) / 1000.0});
    }
    const double before = evaluate(gt, dets, {"m", 1.0, {}, {}}).map;
    auto doubled = dets;
    for (auto d : dets) {
      d.score *= 0.5;
      doubled.push_back(d);
    }
    EXPECT_LE(evaluate(gt, doubled, {"m", 1.0, {}, {}}).map, before + 1e-12);
  }
}

TEST(EvaluateTest, PerfectDetectionsAndClassesWithoutGt) {
  const Dataset gt = TwoImageGt();
  std::vector<Detection> dets;
  for (const auto& s : gt.samples)
    for (const auto& a : s.annotations) dets.push_back({s.id, a.box, a.class_id, 0.9});
  dets.push_back({"0", {1, 1, 3, 3}, 3, 0.1});
  const EvalReport r = evaluate(gt, dets, {"m", 25.0, std::vector<double>(4, 50.0), 12.0});
  EXPECT_DOUBLE_EQ(r.map_percent(), 100.0);
  EXPECT_DOUBLE_EQ(*r.map_over_c, 4.0);
  EXPECT_DOUBLE_EQ(*r.fps, 20.0);
  ASSERT_EQ(r.classes.size(), 3u);
  EXPECT_FALSE(r.classes[2].in_map);
  EXPECT_EQ(r.classes[2].ap, 0.0);
  const Json j = eval_report_to_json(r);
  EXPECT_DOUBLE_EQ(j["mAP"].get<double>(), 100.0);
  EXPECT_FALSE(eval_report_table(r).empty());
}

TEST(EvaluateTest, ValidationErrors) {
  const Dataset gt = TwoImageGt();
  const ModelMeta meta{"m", 1.0, {}, {}};
  const Detection unknown_image[] = {{"zzz", {0, 0, 1, 1}, 1, 0.5}};
  EXPECT_THROW(evaluate(gt, unknown_image, meta), ValidationError);
  const Detection unknown_class[] = {{"0", {0, 0, 1, 1}, 9, 0.5}};
  EXPECT_THROW(evaluate(gt, unknown_class, meta), ValidationError);
  EXPECT_THROW((ModelMeta{"m", 0.0, {}, {}}.validate()), ValidationError);
}

TEST(MetricScaleTest, RatiosAndFps) {
  EXPECT_EQ(map_over_c(50.0, 25.0), 2.0);
  const std::vector<double> ten(10, 100.0);
  EXPECT_EQ(fps_from_timings(ten), 10.0);
}

TEST(DetectionsJsonTest, IntegerIdsBecomeStrings) {
  const Json doc = parse_json(R"([{"image_id": 12, "category_id": 1, "bbox": [1, 2, 3, 4], "score": 0.5}])",
                              "dets");
  const auto dets = detections_from_json(doc);
  ASSERT_EQ(dets.size(), 1u);
  EXPECT_EQ(dets[0].image_id, "12");
  EXPECT_EQ(dets[0].box, (BoundingBox{1, 2, 3, 4}));
  EXPECT_THROW(detections_from_json(parse_json("{}", "x")), Error);
}

}  // namespace
}  // namespace xrayaug
