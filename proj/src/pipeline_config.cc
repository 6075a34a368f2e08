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

#include <algorithm>
#include <array>
#include <set>

#include "xrayaug/canonical_json.h"
#include "xrayaug/errors.h"
#include "xrayaug/pipeline.h"

namespace xrayaug {

namespace {

constexpr std::array<std::pair<AugmentKind, std::string_view>, 10> kKindNames = {{
    {AugmentKind::kRandomFlip, "RandomFlip"},
    {AugmentKind::kRandomCrop, "RandomCrop"},
    {AugmentKind::kRotate, "Rotate"},
    {AugmentKind::kBlur, "Blur"},
    {AugmentKind::kEqualise, "Equalise"},
    {AugmentKind::kJpeg, "JPEG"},
    {AugmentKind::kMixUp, "MixUp"},
    {AugmentKind::kBboxMixUp, "BboxMixUp"},
    {AugmentKind::kCutMix, "CutMix"},
    {AugmentKind::kClassCutMix, "ClassCutMix"},
}};

std::set<std::string> allowed_keys(AugmentKind kind) {
  std::set<std::string> keys{"kind", "probability"};
  switch (kind) {
    case AugmentKind::kRandomFlip: keys.insert("axes"); break;
    case AugmentKind::kRandomCrop: keys.insert({"min_frac", "max_frac"}); break;
    case AugmentKind::kRotate: keys.insert({"angles", "allow_arbitrary"}); break;
    case AugmentKind::kBlur: keys.insert({"sigma_min", "sigma_max"}); break;
    case AugmentKind::kEqualise: break;
    case AugmentKind::kJpeg: keys.insert("quality"); break;
    case AugmentKind::kMixUp: keys.insert("lambda"); break;
    case AugmentKind::kBboxMixUp:
      keys.insert({"lambda", "isolation_threshold", "target_class"});
      break;
    case AugmentKind::kCutMix: keys.insert({"mask_proportion", "isolation_threshold"}); break;
    case AugmentKind::kClassCutMix:
      keys.insert({"mask_proportion", "isolation_threshold", "class_pair"});
      break;
  }
  return keys;
}

double number(const Json& spec, const char* key, double fallback, const std::string& where) {
  if (!spec.contains(key)) return fallback;
  if (!spec[key].is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
  return spec[key].get<double>();
}

ClassRef class_ref(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return {v.get<int>(), ""};
  if (v.is_string()) return {std::nullopt, v.get<std::string>()};
  throw ConfigError(where + ": class must be a category id or name");
}

Json class_ref_json(const ClassRef& ref) {
  if (ref.id) return Json(*ref.id);
  return Json(ref.name);
}

AugmentSpec parse_spec(const Json& j, size_t index) {
  const std::string where = "augmentations[" + std::to_string(index) + "]";
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError(where + ": each augmentation needs a string 'kind'");
  }
  const auto kind = augment_kind_from_string(j["kind"].get<std::string>());
  if (!kind) throw ConfigError(where + ": unknown kind '" + j["kind"].get<std::string>() + "'");
  const auto keys = allowed_keys(*kind);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!keys.count(it.key())) {
      throw ConfigError(where + ": key '" + it.key() + "' does not apply to " +
                        std::string(to_string(*kind)));
    }
  }

  AugmentSpec s = AugmentSpec::Defaults(*kind);
  s.probability = number(j, "probability", s.probability, where);
  if (j.contains("axes")) {
    if (!j["axes"].is_array() || j["axes"].empty()) {
      throw ConfigError(where + ": 'axes' must be a non-empty list");
    }
    s.flip_axes.clear();
    for (const auto& a : j["axes"]) {
      const std::string name = a.is_string() ? a.get<std::string>() : "";
      if (name == "horizontal") {
        s.flip_axes.push_back(FlipAxis::kHorizontal);
      } else if (name == "vertical") {
        s.flip_axes.push_back(FlipAxis::kVertical);
      } else {
        throw ConfigError(where + ": axes entries must be 'horizontal' or 'vertical'");
      }
    }
  }
  s.crop.min_frac = number(j, "min_frac", s.crop.min_frac, where);
  s.crop.max_frac = number(j, "max_frac", s.crop.max_frac, where);
  if (j.contains("angles")) {
    if (!j["angles"].is_array()) throw ConfigError(where + ": 'angles' must be a list");
    s.rotate.angles.clear();
    for (const auto& a : j["angles"]) {
      if (!a.is_number()) throw ConfigError(where + ": angles must be numbers");
      s.rotate.angles.push_back(a.get<double>());
    }
  }
  if (j.contains("allow_arbitrary")) {
    if (!j["allow_arbitrary"].is_boolean()) {
      throw ConfigError(where + ": 'allow_arbitrary' must be true or false");
    }
    s.rotate.allow_arbitrary = j["allow_arbitrary"].get<bool>();
  }
  s.blur.sigma_min = number(j, "sigma_min", s.blur.sigma_min, where);
  s.blur.sigma_max = number(j, "sigma_max", s.blur.sigma_max, where);
  if (j.contains("quality")) {
    if (!j["quality"].is_number_integer()) throw ConfigError(where + ": 'quality' must be an integer");
    s.jpeg_quality = j["quality"].get<int>();
  }
  s.mixer.lambda = number(j, "lambda", s.mixer.lambda, where);
  s.mixer.mask_proportion = number(j, "mask_proportion", s.mixer.mask_proportion, where);
  s.mixer.isolation_threshold =
      number(j, "isolation_threshold", s.mixer.isolation_threshold, where);
  if (j.contains("target_class")) s.target_class = class_ref(j["target_class"], where);
  if (j.contains("class_pair")) {
    const Json& p = j["class_pair"];
    if (!p.is_array() || p.size() != 2) {
      throw ConfigError(where + ": 'class_pair' must list exactly two classes");
    }
    s.class_pair = std::make_pair(class_ref(p[0], where), class_ref(p[1], where));
  }
  try {
    s.validate();
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return s;
}

}  // namespace

std::string_view to_string(AugmentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<AugmentKind> augment_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool is_mixer(AugmentKind kind) {
  return kind == AugmentKind::kMixUp || kind == AugmentKind::kBboxMixUp ||
         kind == AugmentKind::kCutMix || kind == AugmentKind::kClassCutMix;
}

int ClassRef::resolve(const Dataset& dataset) const {
  if (id) {
    if (!dataset.find_class(*id)) {
      throw ConfigError("class id " + std::to_string(*id) + " is not in the dataset catalog");
    }
    return *id;
  }
  if (auto found = dataset.class_id_by_name(name)) return *found;
  throw ConfigError("class '" + name + "' is not in the dataset catalog");
}

AugmentSpec AugmentSpec::Defaults(AugmentKind kind) {
  AugmentSpec s;
  s.kind = kind;
  if (kind == AugmentKind::kRandomCrop) s.probability = 1.0;
  return s;
}

void AugmentSpec::validate() const {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw ParameterError("probability must be in [0, 1]");
  }
  switch (kind) {
    case AugmentKind::kRandomFlip:
      if (flip_axes.empty()) throw ParameterError("RandomFlip needs at least one axis");
      break;
    case AugmentKind::kRandomCrop: crop.validate(); break;
    case AugmentKind::kRotate: rotate.validate(); break;
    case AugmentKind::kBlur: blur.validate(); break;
    case AugmentKind::kEqualise: break;
    case AugmentKind::kJpeg:
      if (jpeg_quality < 1 || jpeg_quality > 100) {
        throw ParameterError("JPEG quality must be in 1..100");
      }
      break;
    case AugmentKind::kClassCutMix:
      if (!class_pair) throw ParameterError("ClassCutMix needs a class_pair");
      mixer.validate();
      break;
    default:
      mixer.validate();
      break;
  }
}

void PipelineConfig::validate() const {
  for (const auto& s : specs) s.validate();
}

PipelineConfig parse_pipeline_config(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("pipeline config must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "seed" && it.key() != "output_mode" && it.key() != "augmentations") {
      throw ConfigError("pipeline config: unknown key '" + it.key() + "'");
    }
  }
  PipelineConfig config;
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) {
      throw ConfigError("pipeline config: 'seed' must be a non-negative integer");
    }
    config.seed = doc["seed"].get<uint64_t>();
  }
  if (doc.contains("output_mode")) {
    const std::string mode = doc["output_mode"].is_string() ? doc["output_mode"].get<std::string>() : "";
    if (mode == "transform") {
      config.output_mode = OutputMode::kTransform;
    } else if (mode == "extend") {
      config.output_mode = OutputMode::kExtend;
    } else {
      throw ConfigError("pipeline config: output_mode must be 'transform' or 'extend'");
    }
  }
  if (!doc.contains("augmentations") || !doc["augmentations"].is_array()) {
    throw ConfigError("pipeline config: missing 'augmentations' list");
  }
  size_t index = 0;
  for (const auto& spec : doc["augmentations"]) {
    config.specs.push_back(parse_spec(spec, index++));
  }
  return config;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  return parse_pipeline_config(read_json_file(path));
}

Json pipeline_config_to_json(const PipelineConfig& config) {
  Json doc = Json::object();
  if (config.seed) doc["seed"] = *config.seed;
  doc["output_mode"] = config.output_mode == OutputMode::kTransform ? "transform" : "extend";
  Json specs = Json::array();
  for (const auto& s : config.specs) {
    Json j = {{"kind", std::string(to_string(s.kind))}, {"probability", s.probability}};
    switch (s.kind) {
      case AugmentKind::kRandomFlip: {
        Json axes = Json::array();
        for (auto a : s.flip_axes) axes.push_back(a == FlipAxis::kHorizontal ? "horizontal" : "vertical");
        j["axes"] = axes;
        break;
      }
      case AugmentKind::kRandomCrop:
        j["min_frac"] = s.crop.min_frac;
        j["max_frac"] = s.crop.max_frac;
        break;
      case AugmentKind::kRotate:
        j["angles"] = s.rotate.angles;
        j["allow_arbitrary"] = s.rotate.allow_arbitrary;
        break;
      case AugmentKind::kBlur:
        j["sigma_min"] = s.blur.sigma_min;
        j["sigma_max"] = s.blur.sigma_max;
        break;
      case AugmentKind::kEqualise:
        break;
      case AugmentKind::kJpeg:
        j["quality"] = s.jpeg_quality;
        break;
      case AugmentKind::kMixUp:
        j["lambda"] = s.mixer.lambda;
        break;
      case AugmentKind::kBboxMixUp:
        j["lambda"] = s.mixer.lambda;
        j["isolation_threshold"] = s.mixer.isolation_threshold;
        if (s.target_class) j["target_class"] = class_ref_json(*s.target_class);
        break;
      case AugmentKind::kCutMix:
        j["mask_proportion"] = s.mixer.mask_proportion;
        j["isolation_threshold"] = s.mixer.isolation_threshold;
        break;
      case AugmentKind::kClassCutMix:
        j["mask_proportion"] = s.mixer.mask_proportion;
        j["isolation_threshold"] = s.mixer.isolation_threshold;
        if (s.class_pair) {
          j["class_pair"] = {class_ref_json(s.class_pair->first),
                             class_ref_json(s.class_pair->second)};
        }
        break;
    }
    specs.push_back(j);
  }
  doc["augmentations"] = specs;
  return doc;
}

}  // namespace xrayaug
