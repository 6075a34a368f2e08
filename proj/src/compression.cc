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

#include "xrayaug/compression.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "xrayaug/codec.h"
#include "xrayaug/errors.h"
#include "xrayaug/logging.h"
#include "xrayaug/parallel.h"

namespace xrayaug {

namespace fs = std::filesystem;

double psnr(const PixelImage& original, const PixelImage& degraded) {
  if (original.extent() != degraded.extent()) {
    throw ParameterError("psnr: images differ in extent");
  }
  const auto a = original.pixels();
  const auto b = degraded.pixels();
  uint64_t sse = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const int64_t d = int64_t(a[i]) - int64_t(b[i]);
    sse += uint64_t(d * d);
  }
  if (sse == 0) return std::numeric_limits<double>::infinity();
  const double mse = double(sse) / double(a.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

namespace {

// Encoded size of the source image: its file on disk, or a PNG encoding for
// samples that only exist in memory.
uint64_t source_bytes(const Dataset& dataset, const Sample& sample) {
  if (sample.image) return encode_png(*sample.image).size();
  std::error_code ec;
  const auto size = fs::file_size(dataset.root / sample.image_path, ec);
  if (ec) throw IoError("cannot stat " + (dataset.root / sample.image_path).string());
  return size;
}

std::string level_dir(int quality) { return "q" + std::to_string(quality); }

}  // namespace

CompressionResult compress_dataset(const Dataset& dataset, const fs::path& out_dir,
                                   const CompressOptions& options) {
  if (options.levels.empty()) throw ParameterError("compress: no quality levels given");
  for (int q : options.levels) {
    if (q < 1 || q > 100) throw ParameterError("compress: quality " + std::to_string(q) + " outside 1..100");
  }
  std::vector<Sample> ordered = dataset.samples;
  std::sort(ordered.begin(), ordered.end(),
            [](const Sample& a, const Sample& b) { return sample_id_less(a.id, b.id); });

  CompressionResult result;
  {
    std::vector<uint64_t> sizes(ordered.size());
    parallel_for(ordered.size(), options.workers,
                 [&](size_t i) { sizes[i] = source_bytes(dataset, ordered[i]); });
    for (uint64_t s : sizes) result.report.original_total_bytes += s;
  }

  // Decode each source once; reused for every level.
  std::vector<std::optional<PixelImage>> sources(ordered.size());
  std::vector<std::string> decode_errors(ordered.size());
  parallel_for(ordered.size(), options.workers, [&](size_t i) {
    try {
      sources[i] = dataset.image(ordered[i]);
    } catch (const Error& e) {
      if (options.strict) throw;
      decode_errors[i] = e.what();
    }
  });

  for (int quality : options.levels) {
    LevelReport level;
    level.quality = quality;
    level.directory = level_dir(quality);
    const fs::path dir = out_dir / level.directory;

    std::vector<std::optional<uint64_t>> sizes(ordered.size());
    std::vector<double> psnrs(ordered.size(), 0.0);
    std::vector<std::string> errors = decode_errors;
    parallel_for(ordered.size(), options.workers, [&](size_t i) {
      if (!sources[i]) return;
      try {
        const auto bytes = encode_jpeg(*sources[i], quality);
        write_file(dir / output_image_path(ordered[i].image_path, ImageFormat::kJpeg), bytes);
        sizes[i] = bytes.size();
        if (options.compute_psnr) psnrs[i] = psnr(*sources[i], decode_jpeg(bytes));
      } catch (const CodecError& e) {
        if (options.strict) throw;
        errors[i] = e.what();
      }
    });

    Dataset variant;
    variant.classes = dataset.classes;
    variant.metadata = dataset.metadata;
    variant.root = dir;
    double psnr_sum = 0.0;
    for (size_t i = 0; i < ordered.size(); ++i) {
      if (!sizes[i]) {
        level.failures.push_back(ordered[i].id + ": " + errors[i]);
        log().warn("compress_skip quality={} sample={} reason=\"{}\"", quality, ordered[i].id,
                   errors[i]);
        continue;
      }
      Sample s = ordered[i];
      s.image.reset();
      s.image_path = output_image_path(s.image_path, ImageFormat::kJpeg);
      variant.samples.push_back(std::move(s));
      level.image_sizes.push_back({ordered[i].id, *sizes[i]});
      level.total_bytes += *sizes[i];
      psnr_sum += psnrs[i];
    }
    if (options.compute_psnr && !variant.samples.empty()) {
      level.mean_psnr_db = psnr_sum / double(variant.samples.size());
    }
    level.ratio_vs_original = result.report.original_total_bytes > 0
                                  ? double(level.total_bytes) / double(result.report.original_total_bytes)
                                  : 0.0;
    const std::string text = serialize_dataset(variant);
    write_file(dir / "annotations.json",
               std::span(reinterpret_cast<const uint8_t*>(text.data()), text.size()));
    result.variants.push_back(std::move(variant));
    result.report.levels.push_back(std::move(level));
  }
  return result;
}

Json compression_report_to_json(const CompressionReport& report) {
  Json levels = Json::array();
  for (const auto& l : report.levels) {
    Json sizes = Json::array();
    for (const auto& s : l.image_sizes) sizes.push_back({{"sample_id", s.sample_id}, {"bytes", s.bytes}});
    Json j = {{"quality", l.quality},
              {"directory", l.directory},
              {"total_bytes", l.total_bytes},
              {"ratio_vs_original", l.ratio_vs_original},
              {"image_sizes", sizes},
              {"failures", l.failures}};
    if (l.mean_psnr_db) {
      j["mean_psnr_db"] = std::isinf(*l.mean_psnr_db) ? Json("inf") : Json(*l.mean_psnr_db);
    } else {
      j["mean_psnr_db"] = nullptr;
    }
    levels.push_back(j);
  }
  return {{"original_total_bytes", report.original_total_bytes}, {"levels", levels}};
}

std::string compression_report_table(const CompressionReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-8s %14s %10s %12s %8s\n", "quality", "total_bytes",
                "ratio", "psnr_db", "failed");
  out += line;
  std::snprintf(line, sizeof(line), "%-8s %14llu %10.4f %12s %8s\n", "source",
                static_cast<unsigned long long>(report.original_total_bytes), 1.0, "-", "-");
  out += line;
  for (const auto& l : report.levels) {
    char psnr_text[32] = "-";
    if (l.mean_psnr_db) std::snprintf(psnr_text, sizeof(psnr_text), "%.2f", *l.mean_psnr_db);
    std::snprintf(line, sizeof(line), "%-8d %14llu %10.4f %12s %8zu\n", l.quality,
                  static_cast<unsigned long long>(l.total_bytes), l.ratio_vs_original, psnr_text,
                  l.failures.size());
    out += line;
  }
  return out;
}

}  // namespace xrayaug
