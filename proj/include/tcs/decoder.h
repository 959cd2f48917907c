// tcs/decoder.h

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

#ifndef TCS_DECODER_H_
#define TCS_DECODER_H_

#include <vector>

#include <json.hpp>

#include "tcs/alphabet.h"
#include "tcs/matrix.h"
#include "tcs/trellis.h"

namespace tcs {

// Labeled span of frames, inclusive on both ends. Segments produced
// from one path tile [0, T-1] without gaps or overlaps.
struct Segment {
  int class_id;
  StateRole role;
  int start_frame;
  int end_frame;

  bool operator==(const Segment&) const = default;
};

// Best valid path with its score and run-length segments.
struct Alignment {
  std::vector<int> state_path;  // length T, indices into the trellis
  double log_prob;              // summed log emissions along the path
  std::vector<Segment> segments;
};

// Best-path decoding: per-frame argmax (ties to the lowest class
// index), then collapse.
LabelSequence greedy_decode(const Matrix& probs, const Alphabet& alphabet, TopologyKind kind);

// Max-product forced alignment with backpointers. Ties are broken
// toward the smaller predecessor state index, and toward the smaller
// end state, so the output is deterministic. Throws
// InfeasibleLabelError when T < min_frames or no path has nonzero
// probability.
Alignment viterbi_align(const Matrix& probs, const StateTrellis& trellis);

// Run-length encodes a state path into segments.
std::vector<Segment> extract_segments(const std::vector<int>& state_path,
                                      const StateTrellis& trellis);

// Speech-span view: each foreground segment is folded into the
// character segment that follows it, so a character's span covers its
// onset. Segments of other roles pass through unchanged.
std::vector<Segment> merge_speech_spans(const std::vector<Segment>& segments);

// JSON array of {"label": name, "role": role, "start": int, "end": int}.
nlohmann::json segments_to_json(const std::vector<Segment>& segments, const Alphabet& alphabet);

}  // namespace tcs

#endif  // TCS_DECODER_H_
