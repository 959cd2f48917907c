// tests/test_synthgen.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "tcs/error.h"
#include "tcs/synthgen.h"

using namespace tcs;

TEST_CASE("templates are deterministic and well separated") {
  SynthConfig config;
  config.seed = 99;
  const Matrix a = make_templates(config);
  const Matrix b = make_templates(config);
  CHECK(a == b);

  for (int i = 0; i < a.rows(); ++i) {
    for (int j = i + 1; j < a.rows(); ++j) {
      double dist2 = 0.0;
      for (int d = 0; d < a.cols(); ++d) {
        const double diff = a(i, d) - a(j, d);
        dist2 += diff * diff;
      }
      CHECK(dist2 >= 1.0);
    }
  }

  SynthConfig single;
  single.n_classes = 1;
  CHECK(make_templates(single).rows() == 1);

  // One-dimensional features cannot hold 10 classes a unit apart in
  // 1000 standard-normal tries.
  SynthConfig cramped;
  cramped.n_classes = 64;
  cramped.feature_dim = 1;
  CHECK_THROWS_AS(make_templates(cramped), ConfigError);
}

TEST_CASE("samples are bracketed by silence and tile their frames") {
  SynthConfig config;
  config.seed = 4;
  const Matrix templates = make_templates(config);
  Rng rng(1234);
  const SynthSample sample = generate_sample(config, templates, rng);

  REQUIRE(!sample.true_segments.empty());
  CHECK(sample.true_segments.front().class_id == kSilenceClass);
  CHECK(sample.true_segments.back().class_id == kSilenceClass);
  CHECK(sample.true_segments.front().start_frame == 0);
  CHECK(sample.true_segments.back().end_frame == sample.num_frames() - 1);

  int expected_start = 0;
  std::vector<int> char_order;
  int previous_class = kSilenceClass - 1;
  for (const TrueSegment& seg : sample.true_segments) {
    CHECK(seg.start_frame == expected_start);
    CHECK(seg.start_frame <= seg.end_frame);
    expected_start = seg.end_frame + 1;
    if (seg.class_id != kSilenceClass) {
      char_order.push_back(seg.class_id);
      CHECK(previous_class == kSilenceClass);  // silences separate characters
    }
    previous_class = seg.class_id;
  }
  CHECK(expected_start == sample.num_frames());
  CHECK(char_order == sample.labels);
  CHECK(static_cast<int>(sample.labels.size()) >= config.seq_len_min);
  CHECK(static_cast<int>(sample.labels.size()) <= config.seq_len_max);
}

TEST_CASE("zero noise reproduces the templates exactly") {
  SynthConfig config;
  config.noise_sigma = 0.0;
  config.seed = 7;
  const Matrix templates = make_templates(config);
  Rng rng(77);
  const SynthSample sample = generate_sample(config, templates, rng);

  for (const TrueSegment& seg : sample.true_segments) {
    for (int t = seg.start_frame; t <= seg.end_frame; ++t) {
      for (int d = 0; d < config.feature_dim; ++d) {
        const double expected =
            seg.class_id == kSilenceClass ? 0.0 : templates(seg.class_id, d);
        CHECK(sample.features(t, d) == expected);
      }
    }
  }
}

TEST_CASE("datasets are bit-identical per seed and prefix-stable") {
  SynthConfig config;
  config.seed = 21;
  const auto a = generate_dataset(config, 5);
  const auto b = generate_dataset(config, 5);
  REQUIRE(a.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(a[i].features == b[i].features);
    CHECK(a[i].labels == b[i].labels);
    CHECK(a[i].true_segments == b[i].true_segments);
    CHECK(a[i].id == b[i].id);
  }

  const auto prefix = generate_dataset(config, 2);
  CHECK(prefix[1].features == a[1].features);

  CHECK(generate_dataset(config, 0).empty());
}

TEST_CASE("label draws are roughly uniform over classes") {
  SynthConfig config;
  config.seed = 5150;
  const auto samples = generate_dataset(config, 1000);
  std::vector<int> counts(config.n_classes, 0);
  long total = 0;
  for (const auto& sample : samples) {
    for (int id : sample.labels) {
      ++counts[id];
      ++total;
    }
  }
  const double expected = static_cast<double>(total) / config.n_classes;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // chi-square 99th percentile at 9 degrees of freedom
  CHECK(chi2 < 21.666);
}

TEST_CASE("clean character frames are nearest to their own template") {
  SynthConfig config;
  config.seed = 31;
  const Matrix templates = make_templates(config);
  const auto samples = generate_dataset(config, 20);

  for (const auto& sample : samples) {
    for (const TrueSegment& seg : sample.true_segments) {
      if (seg.class_id == kSilenceClass) continue;
      for (int t = seg.start_frame; t <= seg.end_frame; ++t) {
        int best = -1;
        double best_dist = 0.0;
        for (int k = 0; k < config.n_classes; ++k) {
          double dist = 0.0;
          for (int d = 0; d < config.feature_dim; ++d) {
            const double diff = sample.features(t, d) - templates(k, d);
            dist += diff * diff;
          }
          if (best < 0 || dist < best_dist) {
            best = k;
            best_dist = dist;
          }
        }
        CHECK(best == seg.class_id);
      }
    }
  }
}

TEST_CASE("frame stacking arithmetic") {
  Matrix features(10, 3);
  for (int t = 0; t < 10; ++t)
    for (int d = 0; d < 3; ++d) features(t, d) = t * 10 + d;

  const Matrix stacked = stack_frames(features, 8, 2);
  REQUIRE(stacked.rows() == 2);  // floor((10-8)/2)+1
  REQUIRE(stacked.cols() == 24);
  CHECK(stacked(0, 0) == 0.0);    // frame 0, dim 0
  CHECK(stacked(0, 23) == 72.0);  // frame 7, dim 2
  CHECK(stacked(1, 0) == 20.0);   // window starts at frame 2
  CHECK(stacked(1, 23) == 92.0);  // frame 9, dim 2

  // window 1, stride 1 is the identity
  CHECK(stack_frames(features, 1, 1) == features);

  CHECK_THROWS_AS(stack_frames(Matrix(4, 3, 0.0), 8, 2), ConfigError);
}

TEST_CASE("boundary rescaling uses floor division with clamping") {
  CHECK(rescale_boundary(9, 2, 6) == 4);
  CHECK(rescale_boundary(0, 2, 6) == 0);
  CHECK(rescale_boundary(40, 2, 6) == 5);  // clamped into the stacked range

  SynthConfig config;
  config.seed = 8;
  const auto samples = generate_dataset(config, 3);
  for (const auto& sample : samples) {
    const SynthSample stacked = stack_sample(sample, 8, 2);
    CHECK(stacked.features.rows() == (sample.num_frames() - 8) / 2 + 1);
    CHECK(stacked.features.cols() == 8 * sample.features.cols());
    REQUIRE(stacked.true_segments.size() == sample.true_segments.size());
    for (std::size_t i = 0; i < stacked.true_segments.size(); ++i) {
      const TrueSegment& seg = stacked.true_segments[i];
      CHECK(seg.class_id == sample.true_segments[i].class_id);
      CHECK(seg.start_frame <= seg.end_frame);
      CHECK(seg.end_frame < stacked.features.rows());
    }
  }
}

TEST_CASE("dataset save and load round-trips") {
  const auto dir = std::filesystem::temp_directory_path() / "tcs_synthgen_roundtrip";
  std::filesystem::remove_all(dir);

  SynthConfig config;
  config.seed = 17;
  const auto samples = generate_dataset(config, 4);
  save_dataset(dir, config, samples);

  const auto [loaded_config, loaded] = load_dataset(dir);
  CHECK(loaded_config.seed == config.seed);
  CHECK(loaded_config.n_classes == config.n_classes);
  REQUIRE(loaded.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(loaded[i].id == samples[i].id);
    CHECK(loaded[i].labels == samples[i].labels);
    CHECK(loaded[i].true_segments == samples[i].true_segments);
    CHECK(loaded[i].features == samples[i].features);  // 17 digits round-trip
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("config validation rejects empty ranges") {
  SynthConfig bad;
  bad.char_dur_min = 5;
  bad.char_dur_max = 4;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  SynthConfig negative;
  negative.noise_sigma = -0.5;
  CHECK_THROWS_AS(negative.validate(), ConfigError);

  const SynthConfig round_trip = SynthConfig::from_json(SynthConfig{}.to_json());
  CHECK(round_trip.char_dur_min == 8);
  CHECK(round_trip.char_dur_max == 20);
  CHECK(round_trip.gap_dur_min == 2);
  CHECK(round_trip.gap_dur_max == 12);
}
