// tcs/nnet.h

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

#ifndef TCS_NNET_H_
#define TCS_NNET_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "tcs/alphabet.h"
#include "tcs/matrix.h"
#include "tcs/synthgen.h"
#include "tcs/trellis.h"

// Minimal unidirectional tanh RNN with hand-written backpropagation
// through time, trained per utterance with the lattice gradient.

namespace tcs {

// One tanh recurrent layer: h_t = tanh(wx x_t + wh h_{t-1} + b),
// zero initial hidden state.
struct RnnLayer {
  Matrix wx;              // hidden x input
  Matrix wh;              // hidden x hidden
  std::vector<double> b;  // hidden
};

struct RnnModel {
  int version = 1;
  std::vector<int> layer_sizes;  // input, hidden..., output
  std::vector<RnnLayer> layers;
  Matrix w_out;               // output x last hidden
  std::vector<double> b_out;  // output
  Alphabet alphabet;

  int input_dim() const { return layer_sizes.front(); }
  int output_dim() const { return layer_sizes.back(); }

  // Checks the dimension chain and finiteness. Throws ConfigError.
  void validate() const;

  nlohmann::json to_json() const;
  static RnnModel from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static RnnModel load(const std::filesystem::path& path);
};

// Weights uniform in +-1/sqrt(fan-in), biases zero, seed-determined.
RnnModel init_model(const std::vector<int>& layer_sizes, const Alphabet& alphabet,
                    std::uint64_t seed);

// Activations kept for the backward pass.
struct RnnCache {
  Matrix input;                // T x D
  std::vector<Matrix> hidden;  // per layer, T x H
};

// Per-frame raw scores, T x K. cache may be null when only the scores
// are needed. Throws ConfigError on an input dimension mismatch.
Matrix rnn_forward(const RnnModel& model, const Matrix& features, RnnCache* cache = nullptr);

// Gradients in model shape.
struct RnnGradients {
  std::vector<RnnLayer> layers;
  Matrix w_out;
  std::vector<double> b_out;

  double squared_norm() const;
  void scale(double factor);
};

// Full BPTT given d(loss)/d(logits).
RnnGradients rnn_backward(const RnnModel& model, const RnnCache& cache,
                          const Matrix& output_grad);

// Global-norm clipping: when ||g||_2 > clip_norm, scales every gradient
// by clip_norm/||g||_2. Returns the pre-clip norm.
double clip_gradients(RnnGradients& grads, double clip_norm);

// SGD step: w -= learning_rate * g.
void apply_update(RnnModel& model, const RnnGradients& grads, double learning_rate);

struct TrainConfig {
  int epochs = 30;
  double learning_rate = 0.05;
  double clip_norm = 5.0;
  bool sortagrad = false;
  TopologyKind kind = TopologyKind::kTcs;
  std::uint64_t seed = 0;

  void validate() const;
};

struct EpochMetrics {
  int epoch;                      // 1-based
  double mean_nll;                // mean sequence NLL over the train set
  double eval_sequence_accuracy;  // greedy exact match on the eval set
};

struct TrainResult {
  std::vector<EpochMetrics> epochs;
};

// Per-utterance SGD: forward, lattice loss, BPTT, clip, update. Epoch
// order is shuffled per seed; with sortagrad the first epoch runs
// shortest-first instead. Infeasible samples abort with the sample id
// in the message. eval_set may be empty, in which case accuracy is
// reported on the training set.
TrainResult train(RnnModel& model, const std::vector<SynthSample>& train_set,
                  const std::vector<SynthSample>& eval_set, const TrainConfig& config);

struct EvalMetrics {
  double sequence_accuracy;      // greedy decode exact match
  double boundary_accuracy;      // Viterbi character boundaries within tolerance
  double occupancy;              // fraction of frames argmaxed to background/blank
  double true_silence_fraction;  // ground-truth silence fraction of the same frames
  double mean_nll;

  nlohmann::json to_json() const;
};

// Scores a model on samples whose features are already at model input
// resolution. Boundary tolerance is in (super-)frames.
EvalMetrics evaluate(const RnnModel& model, const std::vector<SynthSample>& samples,
                     TopologyKind kind, int boundary_tolerance = 3);

}  // namespace tcs

#endif  // TCS_NNET_H_
