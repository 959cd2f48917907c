// tcs/nnet.cc

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

#include "tcs/nnet.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "tcs/decoder.h"
#include "tcs/error.h"
#include "tcs/lattice.h"
#include "tcs/rng.h"

namespace tcs {

// ---------------------------------------------------------------------------
// Model plumbing

void RnnModel::validate() const {
  if (layer_sizes.size() < 2) throw ConfigError("model needs at least input and output sizes");
  if (layers.size() != layer_sizes.size() - 2)
    throw ConfigError("layer count does not match layer_sizes");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const int in = layer_sizes[l];
    const int hidden = layer_sizes[l + 1];
    if (layers[l].wx.rows() != hidden || layers[l].wx.cols() != in ||
        layers[l].wh.rows() != hidden || layers[l].wh.cols() != hidden ||
        static_cast<int>(layers[l].b.size()) != hidden)
      throw ConfigError("layer " + std::to_string(l) + " dimensions do not chain");
  }
  const int last_hidden = layer_sizes[layer_sizes.size() - 2];
  const int out = layer_sizes.back();
  if (w_out.rows() != out || w_out.cols() != last_hidden ||
      static_cast<int>(b_out.size()) != out)
    throw ConfigError("output layer dimensions do not chain");
  if (out != alphabet.num_classes())
    throw ConfigError("output size does not match the alphabet");
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  for (const RnnLayer& layer : layers)
    if (!finite(layer.wx.data()) || !finite(layer.wh.data()) || !finite(layer.b))
      throw ConfigError("non-finite weight");
  if (!finite(w_out.data()) || !finite(b_out)) throw ConfigError("non-finite weight");
}

static Matrix uniform_matrix(int rows, int cols, double bound, Rng& rng) {
  Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.uniform_real(-bound, bound);
  return m;
}

RnnModel init_model(const std::vector<int>& layer_sizes, const Alphabet& alphabet,
                    std::uint64_t seed) {
  if (layer_sizes.size() < 3)
    throw ConfigError("layer_sizes needs input, at least one hidden, and output");
  alphabet.validate();
  Rng rng(mix_seed(seed, 0x11e7));

  RnnModel model;
  model.layer_sizes = layer_sizes;
  model.alphabet = alphabet;
  for (std::size_t l = 0; l + 2 < layer_sizes.size(); ++l) {
    const int in = layer_sizes[l];
    const int hidden = layer_sizes[l + 1];
    RnnLayer layer;
    layer.wx = uniform_matrix(hidden, in, 1.0 / std::sqrt(in), rng);
    layer.wh = uniform_matrix(hidden, hidden, 1.0 / std::sqrt(hidden), rng);
    layer.b.assign(hidden, 0.0);
    model.layers.push_back(std::move(layer));
  }
  const int last_hidden = layer_sizes[layer_sizes.size() - 2];
  model.w_out = uniform_matrix(layer_sizes.back(), last_hidden, 1.0 / std::sqrt(last_hidden), rng);
  model.b_out.assign(layer_sizes.back(), 0.0);
  model.validate();
  return model;
}

nlohmann::json RnnModel::to_json() const {
  nlohmann::json weights;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string prefix = "layer" + std::to_string(l) + ".";
    weights[prefix + "wx"] = layers[l].wx.data();
    weights[prefix + "wh"] = layers[l].wh.data();
    weights[prefix + "b"] = layers[l].b;
  }
  weights["out.w"] = w_out.data();
  weights["out.b"] = b_out;
  return {{"version", version},
          {"layer_sizes", layer_sizes},
          {"weights", weights},
          {"alphabet", alphabet.to_json()}};
}

static Matrix matrix_from_flat(const std::vector<double>& flat, int rows, int cols,
                               const std::string& name) {
  if (static_cast<int>(flat.size()) != rows * cols)
    throw ParseError("weight '" + name + "' has " + std::to_string(flat.size()) +
                     " values, expected " + std::to_string(rows * cols));
  Matrix m(rows, cols);
  m.data() = flat;
  return m;
}

RnnModel RnnModel::from_json(const nlohmann::json& j) {
  RnnModel model;
  try {
    model.version = j.at("version").get<int>();
    model.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
    model.alphabet = Alphabet::from_json(j.at("alphabet"));
    const auto& weights = j.at("weights");
    for (std::size_t l = 0; l + 2 < model.layer_sizes.size(); ++l) {
      const std::string prefix = "layer" + std::to_string(l) + ".";
      const int in = model.layer_sizes[l];
      const int hidden = model.layer_sizes[l + 1];
      RnnLayer layer;
      layer.wx = matrix_from_flat(weights.at(prefix + "wx").get<std::vector<double>>(), hidden,
                                  in, prefix + "wx");
      layer.wh = matrix_from_flat(weights.at(prefix + "wh").get<std::vector<double>>(), hidden,
                                  hidden, prefix + "wh");
      layer.b = weights.at(prefix + "b").get<std::vector<double>>();
      model.layers.push_back(std::move(layer));
    }
    const int last_hidden = model.layer_sizes[model.layer_sizes.size() - 2];
    const int out = model.layer_sizes.back();
    model.w_out = matrix_from_flat(weights.at("out.w").get<std::vector<double>>(), out,
                                   last_hidden, "out.w");
    model.b_out = weights.at("out.b").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad model JSON: ") + e.what());
  }
  model.validate();
  return model;
}

void RnnModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << to_json().dump(2) << '\n';
  if (!out) throw ParseError("write failed: " + path.string());
}

RnnModel RnnModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad model file " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

// ---------------------------------------------------------------------------
// Forward / backward

Matrix rnn_forward(const RnnModel& model, const Matrix& features, RnnCache* cache) {
  if (features.cols() != model.input_dim())
    throw ConfigError("input has " + std::to_string(features.cols()) +
                      " dims, model expects " + std::to_string(model.input_dim()));
  const int num_frames = features.rows();

  if (cache) {
    cache->input = features;
    cache->hidden.assign(model.layers.size(), Matrix());
  }

  Matrix below = features;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const RnnLayer& layer = model.layers[l];
    const int hidden = layer.wx.rows();
    Matrix h(num_frames, hidden);
    for (int t = 0; t < num_frames; ++t) {
      for (int i = 0; i < hidden; ++i) {
        double pre = layer.b[i];
        for (int d = 0; d < below.cols(); ++d) pre += layer.wx(i, d) * below(t, d);
        if (t > 0)
          for (int jj = 0; jj < hidden; ++jj) pre += layer.wh(i, jj) * h(t - 1, jj);
        h(t, i) = std::tanh(pre);
      }
    }
    if (cache) cache->hidden[l] = h;
    below = std::move(h);
  }

  Matrix logits(num_frames, model.output_dim());
  for (int t = 0; t < num_frames; ++t) {
    for (int k = 0; k < model.output_dim(); ++k) {
      double v = model.b_out[k];
      for (int i = 0; i < below.cols(); ++i) v += model.w_out(k, i) * below(t, i);
      logits(t, k) = v;
    }
  }
  return logits;
}

double RnnGradients::squared_norm() const {
  double sum = 0.0;
  auto add = [&sum](const std::vector<double>& v) {
    for (double x : v) sum += x * x;
  };
  for (const RnnLayer& layer : layers) {
    add(layer.wx.data());
    add(layer.wh.data());
    add(layer.b);
  }
  add(w_out.data());
  add(b_out);
  return sum;
}

void RnnGradients::scale(double factor) {
  auto mul = [factor](std::vector<double>& v) {
    for (double& x : v) x *= factor;
  };
  for (RnnLayer& layer : layers) {
    mul(layer.wx.data());
    mul(layer.wh.data());
    mul(layer.b);
  }
  mul(w_out.data());
  mul(b_out);
}

static RnnGradients zero_gradients(const RnnModel& model) {
  RnnGradients grads;
  for (const RnnLayer& layer : model.layers) {
    RnnLayer g;
    g.wx = Matrix(layer.wx.rows(), layer.wx.cols());
    g.wh = Matrix(layer.wh.rows(), layer.wh.cols());
    g.b.assign(layer.b.size(), 0.0);
    grads.layers.push_back(std::move(g));
  }
  grads.w_out = Matrix(model.w_out.rows(), model.w_out.cols());
  grads.b_out.assign(model.b_out.size(), 0.0);
  return grads;
}

RnnGradients rnn_backward(const RnnModel& model, const RnnCache& cache,
                          const Matrix& output_grad) {
  const int num_frames = cache.input.rows();
  if (cache.hidden.size() != model.layers.size() ||
      (num_frames > 0 && !model.layers.empty() && cache.hidden.back().rows() != num_frames))
    throw ConfigError("cache does not match the model");
  if (output_grad.rows() != num_frames || output_grad.cols() != model.output_dim())
    throw ConfigError("output gradient shape mismatch");

  RnnGradients grads = zero_gradients(model);

  // Output layer, and the gradient flowing into the top hidden layer.
  const Matrix& top = cache.hidden.back();
  Matrix upstream(num_frames, top.cols());
  for (int t = 0; t < num_frames; ++t) {
    for (int k = 0; k < model.output_dim(); ++k) {
      const double g = output_grad(t, k);
      if (g == 0.0) continue;
      grads.b_out[k] += g;
      for (int i = 0; i < top.cols(); ++i) {
        grads.w_out(k, i) += g * top(t, i);
        upstream(t, i) += g * model.w_out(k, i);
      }
    }
  }

  // Recurrent layers, top down. upstream carries d(loss)/d(h) from the
  // layer above; dpre carries it through the tanh.
  for (int l = static_cast<int>(model.layers.size()) - 1; l >= 0; --l) {
    const RnnLayer& layer = model.layers[l];
    RnnLayer& grad = grads.layers[l];
    const Matrix& h = cache.hidden[l];
    const Matrix& below = l > 0 ? cache.hidden[l - 1] : cache.input;
    const int hidden = h.cols();

    Matrix downstream(num_frames, below.cols());
    std::vector<double> carry(hidden, 0.0);  // wh^T dpre_{t+1}
    std::vector<double> dpre(hidden);
    for (int t = num_frames - 1; t >= 0; --t) {
      for (int i = 0; i < hidden; ++i) {
        const double dh = upstream(t, i) + carry[i];
        dpre[i] = dh * (1.0 - h(t, i) * h(t, i));
      }
      for (int i = 0; i < hidden; ++i) {
        grad.b[i] += dpre[i];
        for (int d = 0; d < below.cols(); ++d) {
          grad.wx(i, d) += dpre[i] * below(t, d);
          downstream(t, d) += dpre[i] * layer.wx(i, d);
        }
        if (t > 0)
          for (int jj = 0; jj < hidden; ++jj) grad.wh(i, jj) += dpre[i] * h(t - 1, jj);
      }
      std::fill(carry.begin(), carry.end(), 0.0);
      if (t > 0)
        for (int i = 0; i < hidden; ++i)
          for (int jj = 0; jj < hidden; ++jj) carry[jj] += dpre[i] * layer.wh(i, jj);
    }
    upstream = std::move(downstream);
  }
  return grads;
}

double clip_gradients(RnnGradients& grads, double clip_norm) {
  if (clip_norm <= 0.0) throw ConfigError("clip_norm must be positive");
  const double norm = std::sqrt(grads.squared_norm());
  if (norm > clip_norm) grads.scale(clip_norm / norm);
  return norm;
}

void apply_update(RnnModel& model, const RnnGradients& grads, double learning_rate) {
  auto step = [learning_rate](std::vector<double>& w, const std::vector<double>& g) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= learning_rate * g[i];
  };
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    step(model.layers[l].wx.data(), grads.layers[l].wx.data());
    step(model.layers[l].wh.data(), grads.layers[l].wh.data());
    step(model.layers[l].b, grads.layers[l].b);
  }
  step(model.w_out.data(), grads.w_out.data());
  step(model.b_out, grads.b_out);
}

// ---------------------------------------------------------------------------
// Training loop

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be positive");
  // Zero is allowed so a dry run can measure the loss without moving.
  if (learning_rate < 0.0) throw ConfigError("learning_rate must be >= 0");
  if (clip_norm <= 0.0) throw ConfigError("clip_norm must be positive");
}

static double greedy_accuracy(const RnnModel& model, const std::vector<SynthSample>& samples,
                              TopologyKind kind) {
  if (samples.empty()) return 0.0;
  int correct = 0;
  for (const SynthSample& sample : samples) {
    const Matrix probs = softmax_frames(rnn_forward(model, sample.features));
    if (greedy_decode(probs, model.alphabet, kind) == sample.labels) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(samples.size());
}

TrainResult train(RnnModel& model, const std::vector<SynthSample>& train_set,
                  const std::vector<SynthSample>& eval_set, const TrainConfig& config) {
  config.validate();
  model.validate();
  if (train_set.empty()) throw ConfigError("training set is empty");

  // Fail fast on samples that cannot be aligned at their length.
  for (const SynthSample& sample : train_set) {
    const StateTrellis trellis = expand(sample.labels, model.alphabet, config.kind);
    const int need = min_frames(trellis);
    if (sample.num_frames() < need)
      throw InfeasibleLabelError("sample '" + sample.id + "' is infeasible: T=" +
                                 std::to_string(sample.num_frames()) + " < min_frames=" +
                                 std::to_string(need));
  }

  Rng rng(mix_seed(config.seed, 0x7261));
  std::vector<int> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  TrainResult result;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    if (epoch == 0 && config.sortagrad) {
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return train_set[a].num_frames() < train_set[b].num_frames();
      });
    } else {
      rng.shuffle(order);
    }

    double nll_sum = 0.0;
    for (int idx : order) {
      const SynthSample& sample = train_set[idx];
      RnnCache cache;
      const Matrix logits = rnn_forward(model, sample.features, &cache);
      const LatticeResult lattice =
          loss_and_gradient(logits, sample.labels, model.alphabet, config.kind);
      nll_sum += lattice.nll();
      RnnGradients grads = rnn_backward(model, cache, lattice.gradient);
      clip_gradients(grads, config.clip_norm);
      apply_update(model, grads, config.learning_rate);
    }

    EpochMetrics metrics;
    metrics.epoch = epoch + 1;
    metrics.mean_nll = nll_sum / static_cast<double>(train_set.size());
    metrics.eval_sequence_accuracy =
        greedy_accuracy(model, eval_set.empty() ? train_set : eval_set, config.kind);
    result.epochs.push_back(metrics);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Evaluation

nlohmann::json EvalMetrics::to_json() const {
  return {{"sequence_accuracy", sequence_accuracy},
          {"boundary_accuracy", boundary_accuracy},
          {"occupancy", occupancy},
          {"true_silence_fraction", true_silence_fraction},
          {"mean_nll", mean_nll}};
}

// Ground truth class per frame; later segments win where rescaled
// boundaries overlap by a frame.
static std::vector<int> frame_truth(const SynthSample& sample) {
  std::vector<int> truth(sample.num_frames(), kSilenceClass);
  for (const TrueSegment& seg : sample.true_segments)
    for (int t = seg.start_frame; t <= seg.end_frame && t < sample.num_frames(); ++t)
      truth[t] = seg.class_id;
  return truth;
}

EvalMetrics evaluate(const RnnModel& model, const std::vector<SynthSample>& samples,
                     TopologyKind kind, int boundary_tolerance) {
  const Alphabet& alphabet = model.alphabet;
  const int idle_class = kind == TopologyKind::kTcs
                             ? alphabet.background_id.value_or(-1)
                             : alphabet.blank_id.value_or(-1);
  if (idle_class < 0) throw ConfigError("model alphabet lacks the idle class for this topology");

  int correct_sequences = 0;
  int boundaries_total = 0, boundaries_hit = 0;
  long idle_frames = 0, silence_frames = 0, total_frames = 0;
  double nll_sum = 0.0;

  for (const SynthSample& sample : samples) {
    const Matrix logits = rnn_forward(model, sample.features);
    const Matrix probs = softmax_frames(logits);

    if (greedy_decode(probs, alphabet, kind) == sample.labels) ++correct_sequences;

    for (int t = 0; t < probs.rows(); ++t) {
      int best = 0;
      for (int k = 1; k < probs.cols(); ++k)
        if (probs(t, k) > probs(t, best)) best = k;
      if (best == idle_class) ++idle_frames;
    }
    const std::vector<int> truth = frame_truth(sample);
    silence_frames += std::count(truth.begin(), truth.end(), kSilenceClass);
    total_frames += probs.rows();

    nll_sum += loss_and_gradient(logits, sample.labels, alphabet, kind).nll();

    // Character boundaries from forced alignment vs ground truth.
    const StateTrellis trellis = expand(sample.labels, alphabet, kind);
    const Alignment alignment = viterbi_align(probs, trellis);
    std::vector<Segment> aligned_chars;
    for (const Segment& seg : alignment.segments)
      if (seg.role == StateRole::kCharacter) aligned_chars.push_back(seg);
    std::vector<TrueSegment> true_chars;
    for (const TrueSegment& seg : sample.true_segments)
      if (seg.class_id != kSilenceClass) true_chars.push_back(seg);

    // Both lists hold exactly one segment per label, in label order.
    for (std::size_t u = 0; u < true_chars.size() && u < aligned_chars.size(); ++u) {
      boundaries_total += 2;
      if (std::abs(aligned_chars[u].start_frame - true_chars[u].start_frame) <=
          boundary_tolerance)
        ++boundaries_hit;
      if (std::abs(aligned_chars[u].end_frame - true_chars[u].end_frame) <= boundary_tolerance)
        ++boundaries_hit;
    }
  }

  EvalMetrics metrics;
  const double n = static_cast<double>(samples.size());
  metrics.sequence_accuracy = samples.empty() ? 0.0 : correct_sequences / n;
  metrics.boundary_accuracy =
      boundaries_total == 0 ? 0.0
                            : static_cast<double>(boundaries_hit) / boundaries_total;
  metrics.occupancy =
      total_frames == 0 ? 0.0 : static_cast<double>(idle_frames) / total_frames;
  metrics.true_silence_fraction =
      total_frames == 0 ? 0.0 : static_cast<double>(silence_frames) / total_frames;
  metrics.mean_nll = samples.empty() ? 0.0 : nll_sum / n;
  return metrics;
}

}  // namespace tcs
