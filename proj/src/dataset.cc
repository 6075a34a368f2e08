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

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <set>
#include <unordered_map>

#include "xrayaug/codec.h"
#include "xrayaug/errors.h"
#include "xrayaug/logging.h"
#include "xrayaug/parallel.h"

namespace xrayaug {

namespace fs = std::filesystem;

namespace {

bool is_numeric_id(const std::string& s) {
  if (s.empty() || s.size() > 18) return false;
  if (s.size() > 1 && s[0] == '0') return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Json id_to_json(const std::string& id) {
  if (is_numeric_id(id)) return Json(std::stoll(id));
  return Json(id);
}

std::string id_from_json(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return std::to_string(v.get<int64_t>());
  if (v.is_string()) return v.get<std::string>();
  throw ValidationError(where + ": id must be an integer or a string");
}

int int_field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key) || !obj[key].is_number_integer()) {
    throw ValidationError(where + ": missing integer field '" + key + "'");
  }
  return obj[key].get<int>();
}

std::string string_field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key) || !obj[key].is_string()) {
    throw ValidationError(where + ": missing string field '" + key + "'");
  }
  return obj[key].get<std::string>();
}

const Json& array_field(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw ValidationError(std::string("annotation file: missing '") + key + "' array");
  }
  return doc[key];
}

bool safe_relative(const std::string& p) {
  if (p.empty()) return false;
  const fs::path path(p);
  if (path.is_absolute() || path.has_root_name()) return false;
  for (const auto& part : path) {
    if (part == "..") return false;
  }
  return true;
}

void report(std::vector<std::string>* issues, const std::string& msg) {
  log().warn("dataset_issue detail=\"{}\"", msg);
  if (issues) issues->push_back(msg);
}

}  // namespace

bool sample_id_less(const std::string& a, const std::string& b) {
  const bool na = is_numeric_id(a);
  const bool nb = is_numeric_id(b);
  if (na != nb) return na;
  if (na) return a.size() != b.size() ? a.size() < b.size() : a < b;
  return a < b;
}

const Category* Dataset::find_class(int id) const {
  for (const auto& c : classes) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::optional<int> Dataset::class_id_by_name(const std::string& name) const {
  for (const auto& c : classes) {
    if (c.name == name) return c.id;
  }
  return std::nullopt;
}

PixelImage Dataset::image(const Sample& sample) const {
  if (sample.image) return *sample.image;
  PixelImage img = read_image(root / sample.image_path);
  if (img.extent() != sample.extent) {
    throw ValidationError("image " + sample.image_path + " is " +
                          std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                          ", annotations declare " + std::to_string(sample.extent.width) +
                          "x" + std::to_string(sample.extent.height));
  }
  return img;
}

AnnotatedImage Dataset::annotated(size_t index) const {
  const Sample& s = samples.at(index);
  return {image(s), s.annotations};
}

Dataset dataset_from_json(const Json& doc, const fs::path& image_root, bool strict,
                          std::vector<std::string>* issues) {
  if (!doc.is_object()) throw ValidationError("annotation file: top level must be an object");
  Dataset ds;
  ds.root = image_root;
  std::vector<std::string> errors;

  if (doc.contains("info") && doc["info"].is_object()) {
    for (auto it = doc["info"].begin(); it != doc["info"].end(); ++it) {
      ds.metadata[it.key()] =
          it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    }
  }

  std::set<int> class_ids;
  for (const auto& c : array_field(doc, "categories")) {
    Category cat{int_field(c, "id", "category"), string_field(c, "name", "category")};
    if (!class_ids.insert(cat.id).second) {
      errors.push_back("duplicate category id " + std::to_string(cat.id));
    }
    ds.classes.push_back(cat);
  }
  std::sort(ds.classes.begin(), ds.classes.end(),
            [](const Category& a, const Category& b) { return a.id < b.id; });

  std::unordered_map<std::string, size_t> index_of;
  for (const auto& im : array_field(doc, "images")) {
    if (!im.is_object() || !im.contains("id")) throw ValidationError("image entry without id");
    Sample s;
    s.id = id_from_json(im["id"], "image");
    const std::string where = "image " + s.id;
    s.image_path = string_field(im, "file_name", where);
    s.extent = {int_field(im, "width", where), int_field(im, "height", where)};
    if (!s.extent.valid()) errors.push_back(where + ": width and height must be >= 1");
    if (!safe_relative(s.image_path)) {
      errors.push_back(where + ": file_name must be a relative path inside the image root");
    }
    if (!index_of.emplace(s.id, ds.samples.size()).second) {
      errors.push_back("duplicate image id " + s.id);
      continue;
    }
    ds.samples.push_back(std::move(s));
  }

  // (annotation id, file order) per sample, to restore list order.
  std::vector<std::vector<std::pair<std::pair<int64_t, size_t>, Annotation>>> per_sample(
      ds.samples.size());
  size_t order = 0;
  for (const auto& a : array_field(doc, "annotations")) {
    ++order;
    if (!a.is_object() || !a.contains("image_id")) {
      errors.push_back("annotation #" + std::to_string(order) + " has no image_id");
      continue;
    }
    const std::string image_id = id_from_json(a["image_id"], "annotation");
    const std::string where = "annotation #" + std::to_string(order) + " (image " + image_id + ")";
    auto it = index_of.find(image_id);
    if (it == index_of.end()) {
      errors.push_back(where + ": unknown image id " + image_id);
      continue;
    }
    Sample& s = ds.samples[it->second];
    const int category = int_field(a, "category_id", where);
    if (!class_ids.count(category)) {
      errors.push_back(where + ": unknown category id " + std::to_string(category));
      continue;
    }
    if (!a.contains("bbox") || !a["bbox"].is_array() || a["bbox"].size() != 4 ||
        !std::all_of(a["bbox"].begin(), a["bbox"].end(),
                     [](const Json& v) { return v.is_number(); })) {
      errors.push_back(where + ": bbox must be [x, y, width, height]");
      continue;
    }
    const auto& b = a["bbox"];
    Annotation ann;
    ann.box = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()};
    ann.class_id = category;
    if (a.contains("weight")) {
      ann.weight = a["weight"].is_number() ? a["weight"].get<double>() : -1.0;
      if (!(ann.weight > 0.0 && ann.weight <= 1.0)) {
        errors.push_back(where + ": weight must be in (0, 1]");
        continue;
      }
    }
    if (a.contains("provenance")) {
      auto p = a["provenance"].is_string()
                   ? provenance_from_string(a["provenance"].get<std::string>())
                   : std::nullopt;
      if (!p) {
        errors.push_back(where + ": unknown provenance tag");
        continue;
      }
      ann.provenance = *p;
    }
    std::optional<BoundingBox> clipped;
    if (ann.box.valid() && s.extent.valid()) clipped = clip_to_extent(ann.box, s.extent);
    if (!clipped) {
      const std::string msg = where + ": degenerate box (width or height <= 0 inside the image)";
      if (strict) {
        errors.push_back(msg);
      } else {
        report(issues, msg + ", dropped");
      }
      continue;
    }
    ann.box = *clipped;
    const int64_t ann_id = a.contains("id") && a["id"].is_number_integer()
                               ? a["id"].get<int64_t>()
                               : INT64_MAX;
    per_sample[it->second].push_back({{ann_id, order}, ann});
  }
  if (!errors.empty()) throw ValidationError("invalid annotation file", errors);

  for (size_t i = 0; i < ds.samples.size(); ++i) {
    auto& anns = per_sample[i];
    std::sort(anns.begin(), anns.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [key, ann] : anns) ds.samples[i].annotations.push_back(ann);
  }
  std::sort(ds.samples.begin(), ds.samples.end(),
            [](const Sample& a, const Sample& b) { return sample_id_less(a.id, b.id); });
  return ds;
}

Dataset load_dataset(const fs::path& annotation_file, const fs::path& image_root,
                     const LoadOptions& options, std::vector<std::string>* issues) {
  if (!fs::exists(annotation_file)) {
    throw IoError("annotation file not found: " + annotation_file.string());
  }
  Dataset ds = dataset_from_json(read_json_file(annotation_file), image_root,
                                 options.strict, issues);
  if (!options.check_images) return ds;

  std::vector<std::string> problems(ds.samples.size());
  parallel_for(ds.samples.size(), options.workers, [&](size_t i) {
    const Sample& s = ds.samples[i];
    try {
      const PixelImage img = read_image(ds.root / s.image_path);
      if (img.extent() != s.extent) {
        problems[i] = "image " + s.id + " (" + s.image_path + ") decodes to " +
                      std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                      ", declared " + std::to_string(s.extent.width) + "x" +
                      std::to_string(s.extent.height);
      }
    } catch (const Error& e) {
      problems[i] = "image " + s.id + ": " + e.what();
    }
  });
  std::vector<std::string> offenders;
  for (const auto& p : problems) {
    if (!p.empty()) offenders.push_back(p);
  }
  if (offenders.empty()) return ds;
  if (options.strict) throw ValidationError("image validation failed", offenders);
  std::vector<Sample> kept;
  for (size_t i = 0; i < ds.samples.size(); ++i) {
    if (problems[i].empty()) {
      kept.push_back(std::move(ds.samples[i]));
    } else {
      report(issues, problems[i] + ", sample skipped");
    }
  }
  ds.samples = std::move(kept);
  return ds;
}

Json dataset_to_json(const Dataset& dataset) {
  Json doc = Json::object();
  Json info = Json::object();
  for (const auto& [k, v] : dataset.metadata) info[k] = v;
  doc["info"] = info;

  std::vector<Category> classes = dataset.classes;
  std::sort(classes.begin(), classes.end(),
            [](const Category& a, const Category& b) { return a.id < b.id; });
  Json cats = Json::array();
  for (const auto& c : classes) cats.push_back({{"id", c.id}, {"name", c.name}});
  doc["categories"] = cats;

  std::vector<const Sample*> order;
  for (const auto& s : dataset.samples) order.push_back(&s);
  std::sort(order.begin(), order.end(), [](const Sample* a, const Sample* b) {
    return sample_id_less(a->id, b->id);
  });

  Json images = Json::array();
  Json annotations = Json::array();
  int64_t ann_id = 0;
  for (const Sample* s : order) {
    images.push_back({{"id", id_to_json(s->id)},
                      {"file_name", s->image_path},
                      {"width", s->extent.width},
                      {"height", s->extent.height}});
    for (const auto& a : s->annotations) {
      annotations.push_back({
          {"id", ++ann_id},
          {"image_id", id_to_json(s->id)},
          {"category_id", a.class_id},
          {"bbox", {a.box.x_min, a.box.y_min, a.box.width, a.box.height}},
          {"area", a.box.area()},
          {"iscrowd", 0},
          {"weight", a.weight},
          {"provenance", std::string(to_string(a.provenance))},
      });
    }
  }
  doc["images"] = images;
  doc["annotations"] = annotations;
  return doc;
}

std::string serialize_dataset(const Dataset& dataset) {
  return canonical_json(dataset_to_json(dataset));
}

Json provenance_to_json(const Dataset& dataset) {
  Json out = Json::object();
  for (const auto& s : dataset.samples) {
    if (!s.provenance) continue;
    out[s.id] = {{"sources", s.provenance->sources},
                 {"fired", s.provenance->fired},
                 {"rng_draws", s.provenance->rng_draws}};
  }
  return out;
}

std::string output_image_path(const std::string& image_path, ImageFormat format) {
  fs::path p(image_path);
  p.replace_extension(format == ImageFormat::kPng ? ".png" : ".jpg");
  return p.generic_string();
}

Manifest save_dataset(const Dataset& dataset, const fs::path& out_dir,
                      const SaveOptions& options) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  Dataset saved = dataset;
  std::set<std::string> seen;
  std::vector<std::string> clashes;
  for (auto& s : saved.samples) {
    if (!safe_relative(s.image_path)) {
      throw ValidationError("sample " + s.id + ": unsafe image path '" + s.image_path + "'");
    }
    s.image_path = output_image_path(s.image_path, options.format);
    if (!seen.insert(s.image_path).second) clashes.push_back(s.image_path);
  }
  if (!clashes.empty()) throw ValidationError("several samples map to one output image", clashes);

  std::vector<ManifestEntry> entries(saved.samples.size());
  parallel_for(saved.samples.size(), options.workers, [&](size_t i) {
    const PixelImage img = dataset.image(dataset.samples[i]);
    const auto bytes = options.format == ImageFormat::kPng
                           ? encode_png(img)
                           : encode_jpeg(img, options.jpeg_quality);
    write_file(out_dir / saved.samples[i].image_path, bytes);
    entries[i] = {saved.samples[i].image_path, saved.samples[i].id, bytes.size()};
  });

  const std::string text = serialize_dataset(saved);
  write_file(out_dir / options.annotation_file,
             std::span(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
  entries.push_back({options.annotation_file, "", text.size()});

  Manifest manifest;
  std::sort(entries.begin(), entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });
  for (const auto& e : entries) manifest.total_bytes += e.bytes;
  manifest.files = std::move(entries);
  return manifest;
}

}  // namespace xrayaug
