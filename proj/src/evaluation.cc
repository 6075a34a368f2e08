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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <unordered_map>

#include "xrayaug/errors.h"

namespace xrayaug {

namespace {

constexpr int kRecallPoints = 101;

bool by_score(const LabeledDetection& a, const LabeledDetection& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.order < b.order;
}

}  // namespace

void ModelMeta::validate() const {
  if (!(parameter_count_millions > 0.0)) {
    throw ValidationError("model meta: parameter_count_millions must be > 0");
  }
  for (double t : inference_ms) {
    if (!(t > 0.0)) throw ValidationError("model meta: inference times must be positive");
  }
}

MatchResult match_detections(std::span<const BoundingBox> ground_truth,
                             std::span<const Detection> detections, double iou_threshold,
                             size_t order_offset) {
  std::vector<size_t> visit(detections.size());
  std::iota(visit.begin(), visit.end(), 0);
  std::stable_sort(visit.begin(), visit.end(), [&](size_t a, size_t b) {
    return detections[a].score > detections[b].score;
  });

  MatchResult result;
  std::vector<bool> matched(ground_truth.size(), false);
  for (size_t d : visit) {
    double best = -1.0;
    size_t best_gt = ground_truth.size();
    for (size_t g = 0; g < ground_truth.size(); ++g) {
      if (matched[g]) continue;
      const double v = iou(detections[d].box, ground_truth[g]);
      if (v >= iou_threshold && v > best) {
        best = v;
        best_gt = g;
      }
    }
    const bool tp = best_gt < ground_truth.size();
    if (tp) matched[best_gt] = true;
    result.labeled.push_back({detections[d].score, tp, order_offset + d});
    tp ? ++result.true_positives : ++result.false_positives;
  }
  result.false_negatives = ground_truth.size() - result.true_positives;
  return result;
}

double average_precision(std::span<const LabeledDetection> labeled, size_t total_gt) {
  if (total_gt == 0 || labeled.empty()) return 0.0;
  std::vector<LabeledDetection> sorted(labeled.begin(), labeled.end());
  std::stable_sort(sorted.begin(), sorted.end(), by_score);

  const size_t n = sorted.size();
  std::vector<double> recall(n), precision(n);
  size_t tp = 0;
  for (size_t k = 0; k < n; ++k) {
    if (sorted[k].true_positive) ++tp;
    recall[k] = double(tp) / double(total_gt);
    precision[k] = double(tp) / double(k + 1);
  }
  // Precision envelope: best precision at this recall or any later point.
  for (size_t k = n - 1; k > 0; --k) precision[k - 1] = std::max(precision[k - 1], precision[k]);

  double sum = 0.0;
  for (int r = 0; r < kRecallPoints; ++r) {
    const double threshold = double(r) / double(kRecallPoints - 1);
    const auto it = std::lower_bound(recall.begin(), recall.end(), threshold);
    if (it != recall.end()) sum += precision[size_t(it - recall.begin())];
  }
  return sum / kRecallPoints;
}

double map_over_c(double map_percent, double parameter_count_millions) {
  if (!(parameter_count_millions > 0.0)) {
    throw ParameterError("parameter count must be positive");
  }
  return map_percent / parameter_count_millions;
}

double fps_from_timings(std::span<const double> inference_ms) {
  if (inference_ms.empty()) throw ParameterError("fps needs at least one timing");
  double total = 0.0;
  for (double t : inference_ms) {
    if (!(t > 0.0)) throw ParameterError("timings must be positive");
    total += t;
  }
  const double mean = total / double(inference_ms.size());
  return 1000.0 / mean;
}

EvalReport evaluate(const Dataset& ground_truth, std::span<const Detection> detections,
                    const ModelMeta& meta, double iou_threshold) {
  meta.validate();
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw ParameterError("iou threshold must be in (0, 1]");
  }
  std::unordered_map<std::string, size_t> sample_index;
  for (size_t i = 0; i < ground_truth.samples.size(); ++i) {
    sample_index.emplace(ground_truth.samples[i].id, i);
  }
  std::vector<std::string> offenders;
  for (size_t d = 0; d < detections.size(); ++d) {
    const auto& det = detections[d];
    if (!sample_index.count(det.image_id)) {
      offenders.push_back("detection #" + std::to_string(d) + ": unknown image id " + det.image_id);
    }
    if (!ground_truth.find_class(det.class_id)) {
      offenders.push_back("detection #" + std::to_string(d) + ": unknown category id " +
                          std::to_string(det.class_id));
    }
    if (!(det.score >= 0.0 && det.score <= 1.0)) {
      offenders.push_back("detection #" + std::to_string(d) + ": score outside [0, 1]");
    }
  }
  if (!offenders.empty()) throw ValidationError("invalid detections", offenders);

  // (class, sample) -> detections, each keeping its input position.
  std::map<std::pair<int, size_t>, std::vector<size_t>> grouped;
  for (size_t d = 0; d < detections.size(); ++d) {
    grouped[{detections[d].class_id, sample_index[detections[d].image_id]}].push_back(d);
  }

  EvalReport report;
  report.meta = meta;
  report.iou_threshold = iou_threshold;
  double ap_sum = 0.0;
  size_t in_map = 0;
  for (const auto& cat : ground_truth.classes) {
    ClassResult cls;
    cls.class_id = cat.id;
    cls.name = cat.name;
    std::vector<LabeledDetection> labeled;
    for (size_t i = 0; i < ground_truth.samples.size(); ++i) {
      std::vector<BoundingBox> gt;
      for (const auto& a : ground_truth.samples[i].annotations) {
        if (a.class_id == cat.id) gt.push_back(a.box);
      }
      cls.ground_truth += gt.size();
      std::vector<Detection> dets;
      std::vector<size_t> positions;
      if (auto it = grouped.find({cat.id, i}); it != grouped.end()) {
        for (size_t d : it->second) {
          dets.push_back(detections[d]);
          positions.push_back(d);
        }
      }
      if (gt.empty() && dets.empty()) continue;
      MatchResult m = match_detections(gt, dets, iou_threshold);
      for (auto& l : m.labeled) l.order = positions[l.order];
      cls.true_positives += m.true_positives;
      cls.false_positives += m.false_positives;
      cls.false_negatives += m.false_negatives;
      labeled.insert(labeled.end(), m.labeled.begin(), m.labeled.end());
    }
    cls.ap = average_precision(labeled, cls.ground_truth);
    cls.in_map = cls.ground_truth > 0;
    if (cls.in_map) {
      ap_sum += cls.ap;
      ++in_map;
    }
    report.classes.push_back(cls);
  }
  report.map = in_map > 0 ? ap_sum / double(in_map) : 0.0;
  report.map_over_c = map_over_c(report.map_percent(), meta.parameter_count_millions);
  if (!meta.inference_ms.empty()) report.fps = fps_from_timings(meta.inference_ms);
  return report;
}

std::vector<Detection> detections_from_json(const Json& results) {
  if (!results.is_array()) throw ValidationError("detections: expected a JSON array");
  std::vector<Detection> out;
  std::vector<std::string> offenders;
  size_t index = 0;
  for (const auto& r : results) {
    const std::string where = "detection #" + std::to_string(index++);
    if (!r.is_object() || !r.contains("image_id") || !r.contains("category_id") ||
        !r.contains("bbox") || !r.contains("score")) {
      offenders.push_back(where + ": needs image_id, category_id, bbox and score");
      continue;
    }
    Detection d;
    if (r["image_id"].is_number_integer()) {
      d.image_id = std::to_string(r["image_id"].get<int64_t>());
    } else if (r["image_id"].is_string()) {
      d.image_id = r["image_id"].get<std::string>();
    } else {
      offenders.push_back(where + ": image_id must be an integer or a string");
      continue;
    }
    const Json& b = r["bbox"];
    if (!r["category_id"].is_number_integer() || !r["score"].is_number() || !b.is_array() ||
        b.size() != 4 || !std::all_of(b.begin(), b.end(), [](const Json& v) { return v.is_number(); })) {
      offenders.push_back(where + ": malformed category_id, bbox or score");
      continue;
    }
    d.class_id = r["category_id"].get<int>();
    d.score = r["score"].get<double>();
    d.box = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()};
    if (!d.box.valid()) {
      offenders.push_back(where + ": bbox width and height must be positive");
      continue;
    }
    out.push_back(d);
  }
  if (!offenders.empty()) throw ValidationError("invalid detections file", offenders);
  return out;
}

std::vector<Detection> load_detections(const std::filesystem::path& path) {
  return detections_from_json(read_json_file(path));
}

ModelMeta model_meta_from_json(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("model meta: expected a JSON object");
  ModelMeta meta;
  if (doc.contains("name") && doc["name"].is_string()) meta.name = doc["name"].get<std::string>();
  if (!doc.contains("parameter_count_millions") || !doc["parameter_count_millions"].is_number()) {
    throw ValidationError("model meta: missing numeric parameter_count_millions");
  }
  meta.parameter_count_millions = doc["parameter_count_millions"].get<double>();
  if (doc.contains("inference_ms")) {
    if (!doc["inference_ms"].is_array()) throw ValidationError("model meta: inference_ms must be a list");
    for (const auto& t : doc["inference_ms"]) {
      if (!t.is_number()) throw ValidationError("model meta: inference_ms entries must be numbers");
      meta.inference_ms.push_back(t.get<double>());
    }
  }
  if (doc.contains("training_hours") && doc["training_hours"].is_number()) {
    meta.training_hours = doc["training_hours"].get<double>();
  }
  meta.validate();
  return meta;
}

ModelMeta load_model_meta(const std::filesystem::path& path) {
  return model_meta_from_json(read_json_file(path));
}

Json eval_report_to_json(const EvalReport& report) {
  Json classes = Json::array();
  for (const auto& c : report.classes) {
    classes.push_back({{"id", c.class_id},
                       {"name", c.name},
                       {"ap", c.ap * 100.0},
                       {"ground_truth", c.ground_truth},
                       {"tp", c.true_positives},
                       {"fp", c.false_positives},
                       {"fn", c.false_negatives},
                       {"in_map", c.in_map}});
  }
  Json model = {{"name", report.meta.name},
                {"parameter_count_millions", report.meta.parameter_count_millions}};
  model["training_hours"] = report.meta.training_hours ? Json(*report.meta.training_hours) : Json(nullptr);
  return {{"model", model},
          {"iou_threshold", report.iou_threshold},
          {"classes", classes},
          {"mAP", report.map_percent()},
          {"map_over_c", report.map_over_c ? Json(*report.map_over_c) : Json(nullptr)},
          {"fps", report.fps ? Json(*report.fps) : Json(nullptr)}};
}

std::string eval_report_table(const EvalReport& report) {
  std::string header = "Model";
  std::string row = report.meta.name.empty() ? "-" : report.meta.name;
  size_t width = std::max<size_t>(12, row.size());
  char cell[64];
  std::string line_header, line_row;
  std::snprintf(cell, sizeof(cell), "%-*s", int(width), header.c_str());
  line_header += cell;
  std::snprintf(cell, sizeof(cell), "%-*s", int(width), row.c_str());
  line_row += cell;
  for (const auto& c : report.classes) {
    const int w = int(std::max<size_t>(8, c.name.size() + 1));
    std::snprintf(cell, sizeof(cell), " %*s", w, c.name.c_str());
    line_header += cell;
    if (c.in_map) {
      std::snprintf(cell, sizeof(cell), " %*.1f", w, c.ap * 100.0);
    } else {
      std::snprintf(cell, sizeof(cell), " %*s", w, "-");
    }
    line_row += cell;
  }
  std::snprintf(cell, sizeof(cell), " %8s %8s %8s", "mAP", "mAP:C", "fps");
  line_header += cell;
  std::snprintf(cell, sizeof(cell), " %8.1f", report.map_percent());
  line_row += cell;
  if (report.map_over_c) {
    std::snprintf(cell, sizeof(cell), " %8.2f", *report.map_over_c);
  } else {
    std::snprintf(cell, sizeof(cell), " %8s", "-");
  }
  line_row += cell;
  if (report.fps) {
    std::snprintf(cell, sizeof(cell), " %8.1f", *report.fps);
  } else {
    std::snprintf(cell, sizeof(cell), " %8s", "-");
  }
  line_row += cell;
  return line_header + "\n" + line_row + "\n";
}

}  // namespace xrayaug
