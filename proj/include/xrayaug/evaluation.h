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

#ifndef XRAYAUG_EVALUATION_H_
#define XRAYAUG_EVALUATION_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xrayaug/dataset.h"

namespace xrayaug {

struct Detection {
  std::string image_id;
  BoundingBox box;
  int class_id = 0;
  double score = 0.0;
};

struct ModelMeta {
  std::string name;
  double parameter_count_millions = 0.0;
  std::vector<double> inference_ms;
  // Carried through to the report untouched.
  std::optional<double> training_hours;

  void validate() const;
};

struct LabeledDetection {
  double score = 0.0;
  bool true_positive = false;
  // Position in the caller's detection list; breaks score ties.
  size_t order = 0;
};

struct MatchResult {
  std::vector<LabeledDetection> labeled;  // descending score
  size_t true_positives = 0;
  size_t false_positives = 0;
  size_t false_negatives = 0;
};

// Greedy matching for one image and one class. Detections are visited by
// descending score (stable); each takes the unmatched ground truth with the
// highest IoU >= iou_threshold. `order_offset` is added to the labels'
// `order` so several images can be merged.
MatchResult match_detections(std::span<const BoundingBox> ground_truth,
                             std::span<const Detection> detections,
                             double iou_threshold = 0.5, size_t order_offset = 0);

// COCO 101-point interpolated AP over detections from any number of images:
// mean over r in {0, 0.01, ..., 1} of the best precision at recall >= r.
// Returns 0 when total_gt is 0.
double average_precision(std::span<const LabeledDetection> labeled, size_t total_gt);

struct ClassResult {
  int class_id = 0;
  std::string name;
  double ap = 0.0;  // [0, 1]
  size_t ground_truth = 0;
  size_t true_positives = 0;
  size_t false_positives = 0;
  size_t false_negatives = 0;
  // Classes without ground truth are reported but left out of mAP.
  bool in_map = false;
};

struct EvalReport {
  std::vector<ClassResult> classes;
  double map = 0.0;  // [0, 1]
  std::optional<double> map_over_c;
  std::optional<double> fps;
  double iou_threshold = 0.5;
  ModelMeta meta;

  double map_percent() const { return map * 100.0; }
};

// mAP on the 0-100 scale divided by parameters in millions.
double map_over_c(double map_percent, double parameter_count_millions);
// 1000 / mean per-image latency in ms.
double fps_from_timings(std::span<const double> inference_ms);

// Throws ValidationError if a detection names an unknown image or category.
EvalReport evaluate(const Dataset& ground_truth, std::span<const Detection> detections,
                    const ModelMeta& meta, double iou_threshold = 0.5);

// COCO results array of {image_id, category_id, bbox, score}. Integer image
// ids become their decimal string, matching Sample::id.
std::vector<Detection> detections_from_json(const Json& results);
std::vector<Detection> load_detections(const std::filesystem::path& path);

ModelMeta model_meta_from_json(const Json& doc);
ModelMeta load_model_meta(const std::filesystem::path& path);

// AP and mAP values are emitted on the 0-100 scale.
Json eval_report_to_json(const EvalReport& report);
// One row per model: per-class AP columns then mAP, mAP:C and fps.
std::string eval_report_table(const EvalReport& report);

}  // namespace xrayaug

#endif  // XRAYAUG_EVALUATION_H_
