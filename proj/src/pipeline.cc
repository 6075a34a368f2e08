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

#include <atomic>
#include <filesystem>
#include <set>

#include "xrayaug/errors.h"
#include "xrayaug/logging.h"
#include "xrayaug/parallel.h"

namespace xrayaug {

namespace {

class DatasetPool : public MixPool {
 public:
  explicit DatasetPool(const Dataset& dataset) : dataset_(dataset) {}
  size_t size() const override { return dataset_.samples.size(); }
  const std::vector<Annotation>& annotations(size_t index) const override {
    return dataset_.samples[index].annotations;
  }
  AnnotatedImage load(size_t index) const override { return dataset_.annotated(index); }

 private:
  const Dataset& dataset_;
};

// Spec with class references resolved against the dataset catalog.
struct ResolvedSpec {
  AugmentSpec spec;
  std::optional<int> target_class;
};

std::string augmented_path(const std::string& image_path) {
  std::filesystem::path p(image_path);
  const auto ext = p.extension();
  p.replace_filename(p.stem().string() + "_aug");
  p += ext;
  return p.generic_string();
}

struct SampleResult {
  AnnotatedImage sample;
  SampleProvenance provenance;
};

SampleResult run_sample(const std::vector<ResolvedSpec>& specs, uint64_t seed,
                        const Dataset& dataset, const DatasetPool& pool, size_t index,
                        std::vector<std::atomic<uint64_t>>& fired,
                        std::vector<std::atomic<uint64_t>>& ineligible) {
  const Sample& source = dataset.samples[index];
  SampleResult result{dataset.annotated(index), {}};
  result.provenance.sources.push_back(source.id);
  AnnotatedImage& cur = result.sample;
  const size_t n = dataset.samples.size();

  for (size_t k = 0; k < specs.size(); ++k) {
    const AugmentSpec& spec = specs[k].spec;
    RandomStream rng = derive_stream(seed, source.id, k);
    const bool fires = rng.uniform() < spec.probability;
    if (fires) {
      ++fired[k];
      const std::string name(to_string(spec.kind));
      try {
        switch (spec.kind) {
          case AugmentKind::kRandomFlip: {
            const FlipAxis axis = spec.flip_axes[rng.uniform_index(spec.flip_axes.size())];
            cur = flip(cur.image, cur.annotations, axis);
            break;
          }
          case AugmentKind::kRandomCrop:
            cur = random_crop(cur.image, cur.annotations, rng, spec.crop);
            break;
          case AugmentKind::kRotate:
            cur = rotate(cur.image, cur.annotations, rng, spec.rotate);
            break;
          case AugmentKind::kBlur:
            cur = blur(cur.image, cur.annotations, rng, spec.blur);
            break;
          case AugmentKind::kEqualise:
            cur = equalize(cur.image, cur.annotations);
            break;
          case AugmentKind::kJpeg:
            cur = jpeg_degrade(cur.image, cur.annotations, spec.jpeg_quality);
            break;
          case AugmentKind::kMixUp:
          case AugmentKind::kBboxMixUp:
          case AugmentKind::kCutMix: {
            // Partner uniform over the other samples.
            size_t partner = rng.uniform_index(n - 1);
            if (partner >= index) ++partner;
            const AnnotatedImage other = dataset.annotated(partner);
            if (spec.kind == AugmentKind::kMixUp) {
              cur = mixup(cur, other, spec.mixer);
            } else if (spec.kind == AugmentKind::kBboxMixUp) {
              cur = bbox_mixup(cur, other, spec.mixer, rng, specs[k].target_class).sample;
            } else {
              cur = cutmix(cur, other, spec.mixer, rng).sample;
            }
            result.provenance.sources.push_back(dataset.samples[partner].id);
            break;
          }
          case AugmentKind::kClassCutMix: {
            MixOutcome out = class_cutmix(cur, pool, index, spec.mixer, rng);
            cur = std::move(out.sample);
            result.provenance.sources.push_back(dataset.samples[*out.selection.partner].id);
            break;
          }
        }
        result.provenance.fired.push_back(name);
      } catch (const MixerIneligible& e) {
        ++ineligible[k];
        result.provenance.fired.push_back(name + "(ineligible)");
        log().debug("mixer_passthrough sample={} spec={} reason=\"{}\"", source.id, name,
                    e.what());
      }
    }
    result.provenance.rng_draws += rng.draws();
  }
  return result;
}

}  // namespace

Dataset apply_pipeline(const PipelineConfig& config, const Dataset& dataset, int workers,
                       PipelineStats* stats) {
  if (!config.seed) throw ConfigError("pipeline run needs an explicit seed");
  if (config.specs.empty()) throw ConfigError("pipeline config lists no augmentations");
  try {
    config.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }

  std::vector<ResolvedSpec> specs;
  for (const auto& s : config.specs) {
    ResolvedSpec r{s, std::nullopt};
    if (is_mixer(s.kind) && dataset.samples.size() < 2) {
      throw ConfigError(std::string(to_string(s.kind)) + " needs a dataset of at least two samples");
    }
    if (s.target_class) r.target_class = s.target_class->resolve(dataset);
    if (s.class_pair) {
      r.spec.mixer.class_pair = {s.class_pair->first.resolve(dataset),
                                 s.class_pair->second.resolve(dataset)};
    }
    specs.push_back(r);
  }

  const size_t n = dataset.samples.size();
  std::vector<std::atomic<uint64_t>> fired(specs.size());
  std::vector<std::atomic<uint64_t>> ineligible(specs.size());
  std::vector<SampleResult> results(n);
  const DatasetPool pool(dataset);
  parallel_for(n, workers, [&](size_t i) {
    results[i] = run_sample(specs, *config.seed, dataset, pool, i, fired, ineligible);
  });

  Dataset out;
  out.classes = dataset.classes;
  out.root = dataset.root;
  out.metadata = dataset.metadata;
  const bool extend = config.output_mode == OutputMode::kExtend;
  out.samples.reserve(extend ? 2 * n : n);
  std::set<std::string> ids;
  for (size_t i = 0; i < n; ++i) {
    const Sample& source = dataset.samples[i];
    if (extend) {
      out.samples.push_back(source);
      ids.insert(source.id);
    }
    Sample s;
    s.id = extend ? source.id + "_aug" : source.id;
    s.image_path = extend ? augmented_path(source.image_path) : source.image_path;
    s.extent = results[i].sample.image.extent();
    s.annotations = std::move(results[i].sample.annotations);
    s.image = std::make_shared<const PixelImage>(std::move(results[i].sample.image));
    s.provenance = std::move(results[i].provenance);
    out.samples.push_back(std::move(s));
  }
  if (extend) {
    for (size_t i = 0; i < n; ++i) {
      const auto& aug = out.samples[2 * i + 1];
      if (ids.count(aug.id)) throw ConfigError("augmented id " + aug.id + " clashes with an input id");
    }
  }

  if (stats) {
    stats->fired.clear();
    stats->ineligible.clear();
    for (size_t k = 0; k < specs.size(); ++k) {
      stats->fired.push_back(fired[k]);
      stats->ineligible.push_back(ineligible[k]);
    }
  }
  for (size_t k = 0; k < specs.size(); ++k) {
    log().info("pipeline_spec index={} kind={} fired={} ineligible={}", k,
               to_string(specs[k].spec.kind), fired[k].load(), ineligible[k].load());
  }
  return out;
}

}  // namespace xrayaug
