// tcs/oracle.cc

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

#include "tcs/oracle.h"

#include <cmath>

#include "tcs/error.h"
#include "tcs/lattice.h"
#include "tcs/logmath.h"

namespace tcs {

static void extend_path(const StateTrellis& trellis, int num_frames, std::vector<int>& path,
                        std::size_t max_paths, PathSet& out) {
  if (static_cast<int>(path.size()) == num_frames) {
    if (trellis.is_end(path.back())) {
      if (out.paths.size() >= max_paths)
        throw GuardError("path enumeration exceeded " + std::to_string(max_paths) + " paths");
      out.paths.push_back(path);
    }
    return;
  }
  for (int q : trellis.successors[path.back()]) {
    path.push_back(q);
    extend_path(trellis, num_frames, path, max_paths, out);
    path.pop_back();
  }
}

PathSet enumerate_paths(const StateTrellis& trellis, int num_frames, std::size_t max_paths) {
  PathSet out;
  if (num_frames <= 0) return out;
  std::vector<int> path;
  path.reserve(num_frames);
  for (int s : trellis.start_states) {
    path.push_back(s);
    extend_path(trellis, num_frames, path, max_paths, out);
    path.pop_back();
  }
  return out;
}

double brute_force_log_likelihood(const Matrix& probs, const StateTrellis& trellis,
                                  std::size_t max_paths) {
  const PathSet paths = enumerate_paths(trellis, probs.rows(), max_paths);
  if (paths.paths.empty())
    throw InfeasibleLabelError("no valid path of length " + std::to_string(probs.rows()));

  std::vector<double> path_logs;
  path_logs.reserve(paths.size());
  for (const auto& path : paths.paths) {
    double log_prob = 0.0;
    for (int t = 0; t < static_cast<int>(path.size()); ++t)
      log_prob += std::log(probs(t, trellis.states[path[t]].class_id));
    path_logs.push_back(log_prob);
  }
  return log_sum_exp(path_logs);
}

// Forward-pass NLL only; keeps the finite-difference route independent
// of the analytic gradient code.
static double sequence_nll(const Matrix& logits, const StateTrellis& trellis) {
  const Matrix probs = softmax_frames(logits);
  const Matrix alpha = log_forward(probs, trellis);
  double log_likelihood = kLogZero;
  for (int s : trellis.end_states)
    log_likelihood = log_sum_exp(log_likelihood, alpha(logits.rows() - 1, s));
  return -log_likelihood;
}

Matrix finite_difference_gradient(const Matrix& logits, const LabelSequence& labels,
                                  const Alphabet& alphabet, TopologyKind kind, double step) {
  if (step < 1e-6 || step > 1e-4)
    throw ConfigError("finite-difference step must lie in [1e-6, 1e-4]");
  const StateTrellis trellis = expand(labels, alphabet, kind);

  Matrix grad(logits.rows(), logits.cols());
  Matrix perturbed = logits;
  for (int t = 0; t < logits.rows(); ++t) {
    for (int k = 0; k < logits.cols(); ++k) {
      const double original = perturbed(t, k);
      perturbed(t, k) = original + step;
      const double up = sequence_nll(perturbed, trellis);
      perturbed(t, k) = original - step;
      const double down = sequence_nll(perturbed, trellis);
      perturbed(t, k) = original;
      grad(t, k) = (up - down) / (2.0 * step);
    }
  }
  return grad;
}

}  // namespace tcs
