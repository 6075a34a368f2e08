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

#ifndef XRAYAUG_DATASET_H_
#define XRAYAUG_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xrayaug/annotation.h"
#include "xrayaug/canonical_json.h"

namespace xrayaug {

struct Category {
  int id = 0;
  std::string name;

  bool operator==(const Category&) const = default;
};

// How an augmented sample came to be.
struct SampleProvenance {
  std::vector<std::string> sources;  // input sample ids
  std::vector<std::string> fired;    // spec kinds that changed the sample
  uint64_t rng_draws = 0;

  bool operator==(const SampleProvenance&) const = default;
};

struct Sample {
  std::string id;
  // Relative to the dataset root.
  std::string image_path;
  ImageExtent extent;
  std::vector<Annotation> annotations;
  // Decoded pixels when the sample was produced in memory; otherwise the
  // image is read from root / image_path on demand.
  std::shared_ptr<const PixelImage> image;
  std::optional<SampleProvenance> provenance;
};

struct Dataset {
  std::vector<Sample> samples;
  std::vector<Category> classes;
  std::filesystem::path root;
  std::map<std::string, std::string> metadata;

  const Category* find_class(int id) const;
  std::optional<int> class_id_by_name(const std::string& name) const;

  PixelImage image(const Sample& sample) const;
  AnnotatedImage annotated(size_t index) const;
};

// Total order used for canonical output: purely numeric ids numerically,
// before all other ids, which compare as byte strings.
bool sample_id_less(const std::string& a, const std::string& b);

struct LoadOptions {
  bool strict = false;
  // Decode every image and compare it against the declared size.
  bool check_images = true;
  int workers = 1;
};

// Reads COCO-style annotations. Unknown category or image references are
// always validation errors. Degenerate boxes and image problems are errors in
// strict mode; in lenient mode the box or sample is dropped and described in
// `issues`. Boxes are clipped to their image.
Dataset load_dataset(const std::filesystem::path& annotation_file,
                     const std::filesystem::path& image_root,
                     const LoadOptions& options,
                     std::vector<std::string>* issues = nullptr);

Dataset dataset_from_json(const Json& coco, const std::filesystem::path& image_root,
                          bool strict, std::vector<std::string>* issues = nullptr);

Json dataset_to_json(const Dataset& dataset);

// Canonical annotation document. Sample provenance is not part of it; see
// provenance_to_json.
std::string serialize_dataset(const Dataset& dataset);

// {sample id: {sources, fired, rng_draws}} for samples that carry provenance.
Json provenance_to_json(const Dataset& dataset);

enum class ImageFormat { kPng, kJpeg };

struct SaveOptions {
  ImageFormat format = ImageFormat::kPng;
  int jpeg_quality = 95;
  int workers = 1;
  std::string annotation_file = "annotations.json";
};

struct ManifestEntry {
  std::string path;       // relative to the output directory
  std::string sample_id;  // empty for the annotation file
  uint64_t bytes = 0;
};

struct Manifest {
  std::vector<ManifestEntry> files;  // sorted by path
  uint64_t total_bytes = 0;
};

// Writes images (at their image_path, extension set by the format) and the
// canonical annotation file under out_dir.
Manifest save_dataset(const Dataset& dataset, const std::filesystem::path& out_dir,
                      const SaveOptions& options);

// image_path with its extension replaced to match `format`.
std::string output_image_path(const std::string& image_path, ImageFormat format);

}  // namespace xrayaug

#endif  // XRAYAUG_DATASET_H_
