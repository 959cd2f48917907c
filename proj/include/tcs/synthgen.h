// tcs/synthgen.h

// Copyright 2026  The TCS Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef TCS_SYNTHGEN_H_
#define TCS_SYNTHGEN_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tcs/alphabet.h"
#include "tcs/matrix.h"
#include "tcs/rng.h"

// Deterministic generator of labeled feature sequences with exact
// segment boundaries. Characters are noisy copies of per-class template
// vectors separated by pure-noise gaps, so the ground truth needed to
// score alignments is known by construction.

namespace tcs {

struct SynthConfig {
  int n_classes = 10;
  int feature_dim = 32;
  double noise_sigma = 0.1;
  int char_dur_min = 8;
  int char_dur_max = 20;
  int gap_dur_min = 2;
  int gap_dur_max = 12;
  int seq_len_min = 3;
  int seq_len_max = 6;
  std::uint64_t seed = 0;

  // Throws ConfigError on empty ranges, non-positive dims, or negative
  // sigma.
  void validate() const;

  nlohmann::json to_json() const;
  static SynthConfig from_json(const nlohmann::json& j);
};

// Ground-truth span; class_id == kSilenceClass marks a gap.
struct TrueSegment {
  int class_id;
  int start_frame;
  int end_frame;

  bool operator==(const TrueSegment&) const = default;
};

inline constexpr int kSilenceClass = -1;

struct SynthSample {
  std::string id;
  Matrix features;  // T x feature_dim
  LabelSequence labels;
  std::vector<TrueSegment> true_segments;  // tile [0, T-1]

  int num_frames() const { return features.rows(); }
};

// Character class names "0", "1", ... for building alphabets and
// manifests.
std::vector<std::string> synth_class_names(int n_classes);

// Per-class template vectors, standard normal entries, resampled until
// all pairwise Euclidean distances are >= 1.0. Deterministic per seed.
// Throws ConfigError when 1000 resampling tries are exhausted.
Matrix make_templates(const SynthConfig& config);

// One sample: leading gap, then (character, gap) per label. Gap frames
// are zero-mean noise, character frames are template + noise; exact
// boundaries recorded. All draws come from rng in a fixed order.
SynthSample generate_sample(const SynthConfig& config, const Matrix& templates, Rng& rng);

// n_samples samples with ids "sample_00000"... Each sample draws from
// its own stream derived from (config.seed, index), so the dataset is
// prefix-stable in n_samples and safe to generate in parallel.
std::vector<SynthSample> generate_dataset(const SynthConfig& config, int n_samples);

// Concatenates `window` consecutive frames into one super-frame every
// `stride` frames; tail frames that do not fill a window are dropped.
// T' = floor((T - window) / stride) + 1. Throws ConfigError when
// T < window.
Matrix stack_frames(const Matrix& features, int window = 8, int stride = 2);

// Maps a frame boundary into super-frame coordinates:
// floor(b / stride), clamped to [0, stacked_frames - 1].
int rescale_boundary(int frame, int stride, int stacked_frames);

// Stacks a sample's features and rescales its ground-truth boundaries.
// Rescaled neighbours may share a super-frame; the tiling guarantee
// holds only at the original frame rate.
SynthSample stack_sample(const SynthSample& sample, int window = 8, int stride = 2);

// On-disk dataset layout: <dir>/config.json, <dir>/manifest.json and
// one <id>.csv per sample. Manifest entries are
// {"id", "labels": comma-joined names, "true_segments":
//  [{"class": name|null, "start", "end"}]}.
void save_dataset(const std::filesystem::path& dir, const SynthConfig& config,
                  const std::vector<SynthSample>& samples);
std::pair<SynthConfig, std::vector<SynthSample>> load_dataset(const std::filesystem::path& dir);

}  // namespace tcs

#endif  // TCS_SYNTHGEN_H_
