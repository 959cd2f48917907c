// tests/test_util.h

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

#ifndef TCS_TESTS_TEST_UTIL_H_
#define TCS_TESTS_TEST_UTIL_H_

#include <string>
#include <vector>

#include "tcs/alphabet.h"
#include "tcs/matrix.h"
#include "tcs/rng.h"
#include "tcs/trellis.h"

namespace tcs::testing {

// Alphabet over single-letter character classes with the specials
// appended, e.g. chars "CAT" -> names C,A,T,~,+ (TCS) or C,A,T,/ (CTC).
inline Alphabet make_alphabet(const std::string& chars, TopologyKind kind) {
  std::vector<std::string> names;
  for (char c : chars) names.emplace_back(1, c);
  return kind == TopologyKind::kTcs ? Alphabet::with_background_foreground(std::move(names))
                                    : Alphabet::with_blank(std::move(names));
}

// Labels by character, e.g. labels("CAT", alphabet).
inline LabelSequence labels_from(const std::string& text, const Alphabet& alphabet) {
  LabelSequence labels;
  for (char c : text) labels.push_back(alphabet.index_of(std::string(1, c)));
  return labels;
}

inline Matrix random_logits(int rows, int cols, Rng& rng, double scale = 2.0) {
  Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.uniform_real(-scale, scale);
  return m;
}

// A random small instance for oracle comparisons: n_chars character
// classes, U <= max_labels, T padded above min_frames.
struct RandomInstance {
  Alphabet alphabet;
  LabelSequence labels;
  Matrix logits;
};

RandomInstance random_instance(Rng& rng, TopologyKind kind, int max_chars = 3,
                               int max_labels = 3, int max_frames = 8);

}  // namespace tcs::testing

#endif  // TCS_TESTS_TEST_UTIL_H_
