// tcs/lattice.cc

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

#include "tcs/lattice.h"

#include <cmath>

#include "tcs/error.h"
#include "tcs/logmath.h"

namespace tcs {

Matrix softmax_frames(const Matrix& logits) {
  Matrix probs(logits.rows(), logits.cols());
  for (int t = 0; t < logits.rows(); ++t) {
    double max = logits(t, 0);
    for (int k = 1; k < logits.cols(); ++k) max = std::max(max, logits(t, k));
    double sum = 0.0;
    for (int k = 0; k < logits.cols(); ++k) {
      probs(t, k) = std::exp(logits(t, k) - max);
      sum += probs(t, k);
    }
    for (int k = 0; k < logits.cols(); ++k) probs(t, k) /= sum;
  }
  return probs;
}

static void check_feasible(const Matrix& probs, const StateTrellis& trellis) {
  const int need = min_frames(trellis);
  if (probs.rows() < need) {
    throw InfeasibleLabelError("label needs at least " + std::to_string(need) +
                               " frames (min_frames=" + std::to_string(need) + "), got " +
                               std::to_string(probs.rows()));
  }
}

Matrix log_forward(const Matrix& probs, const StateTrellis& trellis) {
  check_feasible(probs, trellis);
  const int num_frames = probs.rows();
  const int num_states = trellis.num_states();
  Matrix alpha(num_frames, num_states, kLogZero);

  for (int s : trellis.start_states)
    alpha(0, s) = std::log(probs(0, trellis.states[s].class_id));

  for (int t = 1; t < num_frames; ++t) {
    for (int s = 0; s < num_states; ++s) {
      double sum = kLogZero;
      for (int p : trellis.predecessors[s]) sum = log_sum_exp(sum, alpha(t - 1, p));
      if (sum != kLogZero)
        alpha(t, s) = sum + std::log(probs(t, trellis.states[s].class_id));
    }
  }
  return alpha;
}

Matrix log_backward(const Matrix& probs, const StateTrellis& trellis) {
  check_feasible(probs, trellis);
  const int num_frames = probs.rows();
  const int num_states = trellis.num_states();
  Matrix beta(num_frames, num_states, kLogZero);

  for (int s : trellis.end_states) beta(num_frames - 1, s) = 0.0;

  for (int t = num_frames - 2; t >= 0; --t) {
    for (int s = 0; s < num_states; ++s) {
      double sum = kLogZero;
      for (int q : trellis.successors[s]) {
        if (beta(t + 1, q) == kLogZero) continue;
        sum = log_sum_exp(sum, beta(t + 1, q) + std::log(probs(t + 1, trellis.states[q].class_id)));
      }
      beta(t, s) = sum;
    }
  }
  return beta;
}

Matrix frame_targets(const Matrix& alpha, const Matrix& beta, const StateTrellis& trellis,
                     double log_likelihood, int num_classes) {
  if (log_likelihood == kLogZero)
    throw InfeasibleLabelError("cannot compute targets: zero total path probability");
  Matrix targets(alpha.rows(), num_classes, 0.0);
  for (int t = 0; t < alpha.rows(); ++t) {
    for (int s = 0; s < trellis.num_states(); ++s) {
      const double mass = alpha(t, s) + beta(t, s);
      if (mass == kLogZero) continue;
      targets(t, trellis.states[s].class_id) += std::exp(mass - log_likelihood);
    }
  }
  return targets;
}

LatticeResult loss_and_gradient(const Matrix& logits, const LabelSequence& labels,
                                const Alphabet& alphabet, TopologyKind kind) {
  if (logits.rows() < 1 || logits.cols() < 2)
    throw ParseError("score matrix must have T >= 1 frames and K >= 2 classes");
  if (logits.cols() != alphabet.num_classes())
    throw ParseError("score matrix has " + std::to_string(logits.cols()) +
                     " classes but the alphabet has " + std::to_string(alphabet.num_classes()));
  for (double v : logits.data())
    if (!std::isfinite(v)) throw ParseError("non-finite score");

  const StateTrellis trellis = expand(labels, alphabet, kind);
  const Matrix probs = softmax_frames(logits);

  LatticeResult result;
  result.alpha = log_forward(probs, trellis);
  result.beta = log_backward(probs, trellis);

  const int last = logits.rows() - 1;
  double log_likelihood = kLogZero;
  for (int s : trellis.end_states)
    log_likelihood = log_sum_exp(log_likelihood, result.alpha(last, s));
  result.log_likelihood = log_likelihood;

  result.frame_targets =
      frame_targets(result.alpha, result.beta, trellis, log_likelihood, alphabet.num_classes());

  result.gradient = Matrix(logits.rows(), logits.cols());
  result.cross_entropy = 0.0;
  for (int t = 0; t < logits.rows(); ++t) {
    for (int k = 0; k < logits.cols(); ++k) {
      const double target = result.frame_targets(t, k);
      result.gradient(t, k) = probs(t, k) - target;
      if (target > 0.0) result.cross_entropy -= target * std::log(probs(t, k));
    }
  }
  return result;
}

nlohmann::json LatticeResult::to_json() const {
  nlohmann::json j;
  j["log_likelihood"] = log_likelihood;
  j["frame_targets"] = frame_targets.data();
  j["gradient"] = gradient.data();
  return j;
}

}  // namespace tcs
