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

#include "xrayaug/cli.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "xrayaug/canonical_json.h"
#include "xrayaug/codec.h"
#include "xrayaug/compression.h"
#include "xrayaug/dataset.h"
#include "xrayaug/errors.h"
#include "xrayaug/evaluation.h"
#include "xrayaug/logging.h"
#include "xrayaug/pipeline.h"

#ifndef XRAYAUG_VERSION
#define XRAYAUG_VERSION "dev"
#endif

namespace xrayaug::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string sha256_hex(std::span<const uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(byte, sizeof(byte), "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

std::string sha256_file(const fs::path& path) { return sha256_hex(read_file(path)); }

// Hash of every source image, keyed by relative path.
Json image_hashes(const Dataset& dataset) {
  std::map<std::string, std::string> sorted;
  for (const auto& s : dataset.samples) {
    sorted[s.image_path] = sha256_file(dataset.root / s.image_path);
  }
  Json out = Json::object();
  for (const auto& [path, hash] : sorted) out[path] = hash;
  return out;
}

Json manifest_files(const Manifest& manifest) {
  Json files = Json::array();
  for (const auto& f : manifest.files) files.push_back({{"path", f.path}, {"bytes", f.bytes}});
  return files;
}

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

fs::path images_dir(const std::string& images, const std::string& annotations) {
  if (!images.empty()) return images;
  const fs::path parent = fs::path(annotations).parent_path();
  return parent.empty() ? fs::path(".") : parent;
}

Json run_manifest(const std::string& command, Json config, const std::string& annotations,
                  const Dataset& dataset) {
  return {{"tool", {{"name", "xrayaug"}, {"version", XRAYAUG_VERSION}}},
          {"command", command},
          {"config", std::move(config)},
          {"inputs",
           {{"annotations", {{"path", annotations}, {"sha256", sha256_file(annotations)}}},
            {"images", image_hashes(dataset)}}}};
}

struct AugmentArgs {
  std::string config, in, images, out;
  std::optional<uint64_t> seed;
  std::string mode;
  int workers = 1;
};

int cmd_augment(const AugmentArgs& a, std::ostream& out) {
  PipelineConfig config = load_pipeline_config(a.config);
  if (a.seed) config.seed = a.seed;
  if (!config.seed) {
    throw UsageError("augment needs --seed or a 'seed' in the config file; "
                     "there is no wall-clock default");
  }
  if (a.mode == "transform") config.output_mode = OutputMode::kTransform;
  if (a.mode == "extend") config.output_mode = OutputMode::kExtend;
  if (config.specs.empty()) throw ConfigError("config lists no augmentations");

  const Dataset input = load_dataset(a.in, images_dir(a.images, a.in),
                                     {.strict = false, .check_images = false, .workers = a.workers});
  PipelineStats stats;
  const Dataset output = apply_pipeline(config, input, a.workers, &stats);
  SaveOptions save;
  save.workers = a.workers;
  const Manifest manifest = save_dataset(output, a.out, save);
  write_text(fs::path(a.out) / "provenance.json", canonical_json(provenance_to_json(output)));

  Json manifest_json = run_manifest("augment", pipeline_config_to_json(config), a.in, input);
  manifest_json["seed"] = *config.seed;
  manifest_json["outputs"] = manifest_files(manifest);
  write_text(fs::path(a.out) / "run-manifest.json", canonical_json(manifest_json));

  Json specs = Json::array();
  for (size_t k = 0; k < config.specs.size(); ++k) {
    specs.push_back({{"kind", std::string(to_string(config.specs[k].kind))},
                     {"fired", stats.fired[k]},
                     {"ineligible", stats.ineligible[k]}});
  }
  out << canonical_json({{"command", "augment"},
                         {"input_samples", input.samples.size()},
                         {"output_samples", output.samples.size()},
                         {"seed", *config.seed},
                         {"specs", specs},
                         {"total_bytes", manifest.total_bytes}});
  return kSuccess;
}

struct CompressArgs {
  std::vector<int> levels{95, 50, 10};
  std::string in, images, out;
  int workers = 1;
  bool strict = false;
  bool no_psnr = false;
  bool table = false;
};

int cmd_compress(const CompressArgs& a, std::ostream& out, std::ostream& err) {
  const Dataset input = load_dataset(a.in, images_dir(a.images, a.in),
                                     {.strict = a.strict, .check_images = false, .workers = a.workers});
  CompressOptions options;
  options.levels = a.levels;
  options.strict = a.strict;
  options.compute_psnr = !a.no_psnr;
  options.workers = a.workers;
  const CompressionResult result = compress_dataset(input, a.out, options);
  const Json report = compression_report_to_json(result.report);
  write_text(fs::path(a.out) / "compression-report.json", canonical_json(report));
  Json manifest = run_manifest("compress", {{"levels", a.levels}, {"strict", a.strict}}, a.in, input);
  write_text(fs::path(a.out) / "run-manifest.json", canonical_json(manifest));
  if (a.table) err << compression_report_table(result.report);
  out << canonical_json(report);
  return kSuccess;
}

struct EvalArgs {
  std::string gt, dets, meta, out;
  double iou = 0.5;
  bool table = false;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const Dataset gt = load_dataset(a.gt, fs::path(a.gt).parent_path(), {.check_images = false});
  const auto detections = load_detections(a.dets);
  const ModelMeta meta = load_model_meta(a.meta);
  const EvalReport report = evaluate(gt, detections, meta, a.iou);
  const std::string text = canonical_json(eval_report_to_json(report));
  if (!a.out.empty()) write_text(a.out, text);
  if (a.table) err << eval_report_table(report);
  out << text;
  return kSuccess;
}

Json summary(std::vector<double> values) {
  if (values.empty()) return nullptr;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  const size_t n = values.size();
  const double median = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  return {{"min", values.front()}, {"max", values.back()},
          {"mean", sum / double(n)}, {"median", median}};
}

int cmd_stats(const std::string& in, std::ostream& out) {
  const Dataset ds = load_dataset(in, fs::path(in).parent_path(), {.check_images = false});
  std::map<int, uint64_t> per_class;
  std::map<size_t, uint64_t> per_image;
  std::vector<double> widths, heights, areas;
  uint64_t small = 0, medium = 0, large = 0, total = 0;
  for (const auto& s : ds.samples) {
    ++per_image[s.annotations.size()];
    for (const auto& a : s.annotations) {
      ++per_class[a.class_id];
      ++total;
      widths.push_back(a.box.width);
      heights.push_back(a.box.height);
      areas.push_back(a.box.area());
      // COCO size buckets.
      if (a.box.area() < 32.0 * 32.0) {
        ++small;
      } else if (a.box.area() < 96.0 * 96.0) {
        ++medium;
      } else {
        ++large;
      }
    }
  }
  Json classes = Json::array();
  for (const auto& c : ds.classes) {
    classes.push_back({{"id", c.id}, {"name", c.name}, {"count", per_class[c.id]}});
  }
  Json objects = Json::array();
  for (const auto& [count, images] : per_image) {
    objects.push_back({{"objects", count}, {"images", images}});
  }
  out << canonical_json({{"images", ds.samples.size()},
                         {"annotations", total},
                         {"classes", classes},
                         {"objects_per_image", objects},
                         {"box_width", summary(widths)},
                         {"box_height", summary(heights)},
                         {"box_area", summary(areas)},
                         {"size_buckets", {{"small", small}, {"medium", medium}, {"large", large}}}});
  return kSuccess;
}

int cmd_validate(const std::string& in, const std::string& images, bool strict, int workers,
                 std::ostream& out) {
  std::vector<std::string> issues;
  size_t samples = 0;
  try {
    const Dataset ds = load_dataset(in, images_dir(images, in),
                                    {.strict = strict, .check_images = true, .workers = workers},
                                    &issues);
    samples = ds.samples.size();
  } catch (const ValidationError& e) {
    issues = e.offenders();
    if (issues.empty()) issues.push_back(e.what());
  }
  out << canonical_json({{"valid", issues.empty()},
                         {"strict", strict},
                         {"samples", samples},
                         {"issues", issues}});
  return issues.empty() ? kSuccess : kValidationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"xrayaug: bounding-box aware augmentation, compression variants and "
               "detection metrics for object detection datasets",
               "xrayaug"};
  app.require_subcommand(1);
  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  AugmentArgs augment;
  auto* aug = app.add_subcommand("augment", "Apply a seeded augmentation pipeline to a dataset");
  aug->add_option("--config", augment.config, "Pipeline config (JSON)")->required();
  aug->add_option("--in", augment.in, "COCO annotation file")->required();
  aug->add_option("--images", augment.images, "Image root (default: annotation file's directory)");
  aug->add_option("--out", augment.out, "Output directory")->required();
  aug->add_option("--seed", augment.seed, "Seed; overrides the config");
  aug->add_option("--mode", augment.mode, "transform or extend; overrides the config")
      ->check(CLI::IsMember({"transform", "extend"}));
  aug->add_option("--workers", augment.workers, "Worker threads")->check(CLI::PositiveNumber);

  CompressArgs compress;
  auto* comp = app.add_subcommand("compress", "Write JPEG variants of a dataset at several qualities");
  comp->add_option("--levels", compress.levels, "Comma-separated JPEG qualities")
      ->delimiter(',')
      ->check(CLI::Range(1, 100));
  comp->add_option("--in", compress.in, "COCO annotation file")->required();
  comp->add_option("--images", compress.images, "Image root (default: annotation file's directory)");
  comp->add_option("--out", compress.out, "Output directory")->required();
  comp->add_option("--workers", compress.workers, "Worker threads")->check(CLI::PositiveNumber);
  comp->add_flag("--strict", compress.strict, "Abort on the first codec failure");
  comp->add_flag("--no-psnr", compress.no_psnr, "Skip PSNR computation");
  comp->add_flag("--table", compress.table, "Also print a table to stderr");

  EvalArgs evaluation;
  auto* ev = app.add_subcommand("eval", "Score detections against ground truth");
  ev->add_option("--gt", evaluation.gt, "Ground-truth COCO annotation file")->required();
  ev->add_option("--dets", evaluation.dets, "COCO results JSON")->required();
  ev->add_option("--meta", evaluation.meta, "Model metadata JSON")->required();
  ev->add_option("--iou", evaluation.iou, "IoU match threshold")->check(CLI::Range(0.0, 1.0));
  ev->add_option("--out", evaluation.out, "Also write the report here");
  ev->add_flag("--table", evaluation.table, "Also print a table to stderr");

  std::string stats_in;
  auto* st = app.add_subcommand("stats", "Class, box-size and per-image object statistics");
  st->add_option("--in", stats_in, "COCO annotation file")->required();

  std::string validate_in, validate_images;
  bool validate_strict = false;
  int validate_workers = 1;
  auto* val = app.add_subcommand("validate", "Check annotations against the images");
  val->add_option("--in", validate_in, "COCO annotation file")->required();
  val->add_option("--images", validate_images, "Image root (default: annotation file's directory)");
  val->add_flag("--strict", validate_strict, "Fail on the first class of problems");
  val->add_option("--workers", validate_workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  log().set_level(spdlog::level::from_str(log_level));
  try {
    if (aug->parsed()) return cmd_augment(augment, out);
    if (comp->parsed()) return cmd_compress(compress, out, err);
    if (ev->parsed()) return cmd_eval(evaluation, out, err);
    if (st->parsed()) return cmd_stats(stats_in, out);
    if (val->parsed()) {
      return cmd_validate(validate_in, validate_images, validate_strict, validate_workers, out);
    }
    err << app.help();
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kIoError;
  } catch (const CodecError& e) {
    err << "codec error: " << e.what() << "\n";
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "io error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    // Validation, parse, config and parameter errors.
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
}

}  // namespace xrayaug::cli
