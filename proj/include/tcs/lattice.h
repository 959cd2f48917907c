// tcs/lattice.h

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

#ifndef TCS_LATTICE_H_
#define TCS_LATTICE_H_

#include <json.hpp>

#include "tcs/alphabet.h"
#include "tcs/matrix.h"
#include "tcs/trellis.h"

namespace tcs {

// Everything the forward-backward pass produces for one utterance.
//
// Conventions: alpha[t][s] includes the emission at frame t while
// beta[t][s] excludes it, so alpha[t][s] + beta[t][s] is the exact
// log-mass of all complete paths through state s at frame t. Hence for
// every t: logsumexp_s(alpha[t][s] + beta[t][s]) == log_likelihood.
struct LatticeResult {
  double log_likelihood;  // natural log
  Matrix alpha;           // T x S, log domain
  Matrix beta;            // T x S, log domain
  Matrix frame_targets;   // T x K, each row a distribution
  Matrix gradient;        // T x K, d(NLL)/d(raw scores)
  double cross_entropy;   // sum_t sum_k -target * log softmax, targets frozen

  double nll() const { return -log_likelihood; }

  // {"log_likelihood": ..., "frame_targets": [row-major],
  //  "gradient": [row-major]}
  nlohmann::json to_json() const;
};

// Row-wise max-subtracted softmax. Rows of the result sum to 1.
Matrix softmax_frames(const Matrix& logits);

// Alpha recursion over per-frame class probabilities.
//   alpha[0][s] = log probs[0][class(s)]            for s in start_states
//   alpha[t][s] = logsumexp_{p in preds(s)} alpha[t-1][p]
//                 + log probs[t][class(s)]
// Throws InfeasibleLabelError when T < min_frames(trellis).
Matrix log_forward(const Matrix& probs, const StateTrellis& trellis);

// Beta recursion, excluding the frame-t emission:
//   beta[T-1][s] = 0                                for s in end_states
//   beta[t][s]   = logsumexp_{q in succs(s)} beta[t+1][q]
//                  + log probs[t+1][class(q)]
Matrix log_backward(const Matrix& probs, const StateTrellis& trellis);

// Per-frame state occupancies folded onto classes:
//   target[t][k] = sum_{s: class(s)=k} exp(alpha[t][s] + beta[t][s]
//                                          - log_likelihood)
// Rows sum to 1. Throws InfeasibleLabelError when log_likelihood is
// -inf.
Matrix frame_targets(const Matrix& alpha, const Matrix& beta, const StateTrellis& trellis,
                     double log_likelihood, int num_classes);

// Full pass from raw scores: softmax, forward-backward, targets, and
// the gradient of the sequence NLL w.r.t. the raw scores,
//   gradient[t][k] = softmax[t][k] - target[t][k].
// The frozen-target per-frame cross entropy is reported alongside the
// NLL; the two objectives share this gradient. Throws ParseError on
// non-finite logits or a class-count mismatch, InfeasibleLabelError
// when T < min_frames.
LatticeResult loss_and_gradient(const Matrix& logits, const LabelSequence& labels,
                                const Alphabet& alphabet, TopologyKind kind);

}  // namespace tcs

#endif  // TCS_LATTICE_H_
