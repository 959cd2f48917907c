// tcs/synthgen.cc

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

#include "tcs/synthgen.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "tcs/error.h"

namespace tcs {

void SynthConfig::validate() const {
  if (n_classes < 1) throw ConfigError("n_classes must be positive");
  if (feature_dim < 1) throw ConfigError("feature_dim must be positive");
  if (noise_sigma < 0.0) throw ConfigError("noise_sigma must be >= 0");
  if (char_dur_min < 1 || char_dur_max < char_dur_min)
    throw ConfigError("char_dur range is empty");
  if (gap_dur_min < 1 || gap_dur_max < gap_dur_min) throw ConfigError("gap_dur range is empty");
  if (seq_len_min < 0 || seq_len_max < seq_len_min) throw ConfigError("seq_len range is empty");
}

nlohmann::json SynthConfig::to_json() const {
  return {{"n_classes", n_classes},
          {"feature_dim", feature_dim},
          {"noise_sigma", noise_sigma},
          {"char_dur", {char_dur_min, char_dur_max}},
          {"gap_dur", {gap_dur_min, gap_dur_max}},
          {"seq_len", {seq_len_min, seq_len_max}},
          {"seed", seed}};
}

SynthConfig SynthConfig::from_json(const nlohmann::json& j) {
  SynthConfig c;
  try {
    c.n_classes = j.value("n_classes", c.n_classes);
    c.feature_dim = j.value("feature_dim", c.feature_dim);
    c.noise_sigma = j.value("noise_sigma", c.noise_sigma);
    if (j.contains("char_dur")) {
      c.char_dur_min = j.at("char_dur").at(0).get<int>();
      c.char_dur_max = j.at("char_dur").at(1).get<int>();
    }
    if (j.contains("gap_dur")) {
      c.gap_dur_min = j.at("gap_dur").at(0).get<int>();
      c.gap_dur_max = j.at("gap_dur").at(1).get<int>();
    }
    if (j.contains("seq_len")) {
      c.seq_len_min = j.at("seq_len").at(0).get<int>();
      c.seq_len_max = j.at("seq_len").at(1).get<int>();
    }
    c.seed = j.value("seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad synth config JSON: ") + e.what());
  }
  c.validate();
  return c;
}

std::vector<std::string> synth_class_names(int n_classes) {
  std::vector<std::string> names;
  names.reserve(n_classes);
  for (int k = 0; k < n_classes; ++k) names.push_back(std::to_string(k));
  return names;
}

static double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

Matrix make_templates(const SynthConfig& config) {
  config.validate();
  Rng rng(mix_seed(config.seed, 0x7e3a));
  Matrix templates(config.n_classes, config.feature_dim);

  constexpr double kMinDistance = 1.0;
  int tries = 0;
  for (int k = 0; k < config.n_classes; ++k) {
    while (true) {
      for (int d = 0; d < config.feature_dim; ++d) templates(k, d) = rng.normal();
      bool separated = true;
      for (int j = 0; j < k && separated; ++j)
        separated = squared_distance(templates.row(k), templates.row(j)) >=
                    kMinDistance * kMinDistance;
      if (separated) break;
      if (++tries > 1000)
        throw ConfigError("could not separate class templates after 1000 resamples; "
                          "feature_dim is too small for n_classes");
    }
  }
  return templates;
}

SynthSample generate_sample(const SynthConfig& config, const Matrix& templates, Rng& rng) {
  config.validate();

  const int num_labels = rng.uniform_int(config.seq_len_min, config.seq_len_max);
  LabelSequence labels(num_labels);
  for (int& id : labels) id = rng.uniform_int(0, config.n_classes - 1);

  // Durations: leading gap, then character + trailing gap per label, so
  // gaps always separate characters and bracket the sample.
  std::vector<int> gap_durations(num_labels + 1);
  std::vector<int> char_durations(num_labels);
  gap_durations[0] = rng.uniform_int(config.gap_dur_min, config.gap_dur_max);
  for (int u = 0; u < num_labels; ++u) {
    char_durations[u] = rng.uniform_int(config.char_dur_min, config.char_dur_max);
    gap_durations[u + 1] = rng.uniform_int(config.gap_dur_min, config.gap_dur_max);
  }

  int total = gap_durations[0];
  for (int u = 0; u < num_labels; ++u) total += char_durations[u] + gap_durations[u + 1];

  SynthSample sample;
  sample.labels = labels;
  sample.features = Matrix(total, config.feature_dim);

  int frame = 0;
  auto emit = [&](int duration, int class_id) {
    const int start = frame;
    for (int i = 0; i < duration; ++i, ++frame) {
      for (int d = 0; d < config.feature_dim; ++d) {
        const double mean = class_id == kSilenceClass ? 0.0 : templates(class_id, d);
        sample.features(frame, d) = mean + config.noise_sigma * rng.normal();
      }
    }
    sample.true_segments.push_back({class_id, start, frame - 1});
  };

  emit(gap_durations[0], kSilenceClass);
  for (int u = 0; u < num_labels; ++u) {
    emit(char_durations[u], labels[u]);
    emit(gap_durations[u + 1], kSilenceClass);
  }
  return sample;
}

std::vector<SynthSample> generate_dataset(const SynthConfig& config, int n_samples) {
  config.validate();
  const Matrix templates = make_templates(config);
  std::vector<SynthSample> samples;
  samples.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    Rng rng(mix_seed(config.seed, 0x5a11 + static_cast<std::uint64_t>(i)));
    SynthSample sample = generate_sample(config, templates, rng);
    char name[32];
    std::snprintf(name, sizeof(name), "sample_%05d", i);
    sample.id = name;
    samples.push_back(std::move(sample));
  }
  return samples;
}

Matrix stack_frames(const Matrix& features, int window, int stride) {
  if (window < 1 || stride < 1) throw ConfigError("window and stride must be positive");
  if (features.rows() < window)
    throw ConfigError("cannot stack " + std::to_string(features.rows()) +
                      " frames with window " + std::to_string(window));
  const int stacked = (features.rows() - window) / stride + 1;
  Matrix out(stacked, window * features.cols());
  for (int t = 0; t < stacked; ++t)
    for (int w = 0; w < window; ++w)
      for (int d = 0; d < features.cols(); ++d)
        out(t, w * features.cols() + d) = features(t * stride + w, d);
  return out;
}

int rescale_boundary(int frame, int stride, int stacked_frames) {
  int b = frame / stride;
  if (b < 0) b = 0;
  if (b > stacked_frames - 1) b = stacked_frames - 1;
  return b;
}

SynthSample stack_sample(const SynthSample& sample, int window, int stride) {
  SynthSample out;
  out.id = sample.id;
  out.labels = sample.labels;
  out.features = stack_frames(sample.features, window, stride);
  out.true_segments.reserve(sample.true_segments.size());
  for (const TrueSegment& seg : sample.true_segments) {
    out.true_segments.push_back({seg.class_id,
                                 rescale_boundary(seg.start_frame, stride, out.features.rows()),
                                 rescale_boundary(seg.end_frame, stride, out.features.rows())});
  }
  return out;
}

void save_dataset(const std::filesystem::path& dir, const SynthConfig& config,
                  const std::vector<SynthSample>& samples) {
  std::filesystem::create_directories(dir);
  const Alphabet alphabet{synth_class_names(config.n_classes), {}, {}, {}};

  std::ofstream config_out(dir / "config.json");
  if (!config_out) throw ParseError("cannot write " + (dir / "config.json").string());
  config_out << config.to_json().dump(2) << '\n';

  nlohmann::json manifest = nlohmann::json::array();
  for (const SynthSample& sample : samples) {
    nlohmann::json segments = nlohmann::json::array();
    for (const TrueSegment& seg : sample.true_segments) {
      segments.push_back({{"class", seg.class_id == kSilenceClass
                                        ? nlohmann::json(nullptr)
                                        : nlohmann::json(alphabet.names[seg.class_id])},
                          {"start", seg.start_frame},
                          {"end", seg.end_frame}});
    }
    manifest.push_back({{"id", sample.id},
                        {"labels", labels_to_string(sample.labels, alphabet)},
                        {"true_segments", segments}});
    write_csv_matrix(dir / (sample.id + ".csv"), sample.features);
  }
  std::ofstream manifest_out(dir / "manifest.json");
  if (!manifest_out) throw ParseError("cannot write " + (dir / "manifest.json").string());
  manifest_out << manifest.dump(2) << '\n';
}

std::pair<SynthConfig, std::vector<SynthSample>> load_dataset(const std::filesystem::path& dir) {
  std::ifstream config_in(dir / "config.json");
  if (!config_in) throw ParseError("cannot open " + (dir / "config.json").string());
  nlohmann::json config_json;
  std::ifstream manifest_in(dir / "manifest.json");
  if (!manifest_in) throw ParseError("cannot open " + (dir / "manifest.json").string());
  nlohmann::json manifest_json;
  try {
    config_in >> config_json;
    manifest_in >> manifest_json;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad dataset JSON in " + dir.string() + ": " + e.what());
  }

  const SynthConfig config = SynthConfig::from_json(config_json);
  const Alphabet alphabet{synth_class_names(config.n_classes), {}, {}, {}};

  std::vector<SynthSample> samples;
  try {
    for (const auto& entry : manifest_json) {
      SynthSample sample;
      sample.id = entry.at("id").get<std::string>();
      const std::string label_string = entry.at("labels").get<std::string>();
      std::size_t pos = 0;
      while (pos < label_string.size()) {
        std::size_t comma = label_string.find(',', pos);
        const std::string name =
            label_string.substr(pos, comma == std::string::npos ? comma : comma - pos);
        const int id = alphabet.index_of(name);
        if (id < 0) throw ParseError("unknown label '" + name + "' in manifest");
        sample.labels.push_back(id);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      for (const auto& seg : entry.at("true_segments")) {
        int class_id = kSilenceClass;
        if (!seg.at("class").is_null()) {
          class_id = alphabet.index_of(seg.at("class").get<std::string>());
          if (class_id < 0) throw ParseError("unknown class in true_segments");
        }
        sample.true_segments.push_back(
            {class_id, seg.at("start").get<int>(), seg.at("end").get<int>()});
      }
      sample.features = read_csv_matrix(dir / (sample.id + ".csv"));
      samples.push_back(std::move(sample));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad manifest in " + dir.string() + ": " + e.what());
  }
  return {config, samples};
}

}  // namespace tcs
