// tcs/oracle.h

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

#ifndef TCS_ORACLE_H_
#define TCS_ORACLE_H_

#include <cstddef>
#include <vector>

#include "tcs/alphabet.h"
#include "tcs/matrix.h"
#include "tcs/trellis.h"

// Brute-force reference implementations. These are correctness anchors
// for tests and for the CLI --verify mode, not fast paths: they walk
// every valid path explicitly instead of running the dynamic program.

namespace tcs {

// All valid start-to-end paths of a given length.
struct PathSet {
  std::vector<std::vector<int>> paths;  // state-index sequences, length T each

  std::size_t size() const { return paths.size(); }
};

// Exhaustive depth-first expansion of every valid path of length
// num_frames. Throws GuardError once more than max_paths paths exist.
PathSet enumerate_paths(const StateTrellis& trellis, int num_frames,
                        std::size_t max_paths = 1000000);

// log sum over enumerated paths of prod_t probs[t][class(path[t])].
// Throws InfeasibleLabelError when no valid path exists.
double brute_force_log_likelihood(const Matrix& probs, const StateTrellis& trellis,
                                  std::size_t max_paths = 1000000);

// Central finite differences of the sequence NLL w.r.t. each raw score:
//   (NLL(x + h e_tk) - NLL(x - h e_tk)) / 2h
// step must lie in [1e-6, 1e-4]. NLL is evaluated through the forward
// pass only, independent of the analytic gradient path.
Matrix finite_difference_gradient(const Matrix& logits, const LabelSequence& labels,
                                  const Alphabet& alphabet, TopologyKind kind,
                                  double step = 1e-5);

}  // namespace tcs

#endif  // TCS_ORACLE_H_
