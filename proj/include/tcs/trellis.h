// tcs/trellis.h

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

#ifndef TCS_TRELLIS_H_
#define TCS_TRELLIS_H_

#include <string>
#include <vector>

#include "tcs/alphabet.h"

namespace tcs {

// The two supported label-expansion topologies.
//
// CTC expands U labels into 2U+1 states, alternating blank and
// character:        /, c1, /, c2, ..., /, cU, /
//
// TCS (temporal classification + segmentation) expands U labels into
// 3U+1 states:      ~, +, c1, ~, +, c2, ..., ~, +, cU, ~
// where '~' is the background and '+' the foreground state. A character
// can only be entered from its foreground state; the backgrounds on
// either side of a (foreground, character) pair are optional.
enum class TopologyKind { kCtc, kTcs };

enum class StateRole { kBlank, kBackground, kForeground, kCharacter };

const char* to_string(TopologyKind kind);
const char* to_string(StateRole role);

// One expanded state. label_position is the index of the label slot the
// state belongs to; it distinguishes repeated characters and numbers the
// blank/background slots 0..U.
struct TrellisState {
  int class_id;
  StateRole role;
  int label_position;

  bool operator==(const TrellisState&) const = default;
};

// Expanded state sequence with its transition structure. States are
// stored 0-based in expansion order. Predecessor lists always contain
// the state itself (every state has a self-loop) and are sorted
// ascending; successor lists are the transpose.
struct StateTrellis {
  TopologyKind kind;
  std::vector<TrellisState> states;
  std::vector<std::vector<int>> predecessors;
  std::vector<std::vector<int>> successors;
  std::vector<int> start_states;
  std::vector<int> end_states;

  int num_states() const { return static_cast<int>(states.size()); }
  bool is_start(int s) const;
  bool is_end(int s) const;
};

// Builds the CTC trellis (2U+1 states). The skip transition over a
// blank, character_i -> character_{i+1}, exists only when the two
// labels differ. Requires alphabet.blank_id; throws ConfigError on a
// missing blank or invalid labels.
StateTrellis expand_ctc(const LabelSequence& labels, const Alphabet& alphabet);

// Builds the TCS trellis (3U+1 states). Non-self transitions are
// background_i -> foreground_i -> character_i -> {background_{i+1},
// foreground_{i+1}}; nothing skips a foreground or a character.
// Requires background_id and foreground_id; throws ConfigError.
StateTrellis expand_tcs(const LabelSequence& labels, const Alphabet& alphabet);

// Dispatches on kind.
StateTrellis expand(const LabelSequence& labels, const Alphabet& alphabet, TopologyKind kind);

// The collapse function F: merge adjacent duplicate classes first, then
// drop the special classes of the topology (blank for CTC, background
// and foreground for TCS). Accepts arbitrary class paths, including
// ones no valid trellis path could produce, so raw per-frame argmax
// sequences can be collapsed directly. Throws ConfigError on an
// out-of-range class id.
LabelSequence collapse(const std::vector<int>& class_path, const Alphabet& alphabet,
                       TopologyKind kind);

// Length of the shortest valid start-to-end path, i.e. the fewest
// frames the label sequence can be aligned to. Computed by dynamic
// programming over the non-self transitions.
int min_frames(const StateTrellis& trellis);

}  // namespace tcs

#endif  // TCS_TRELLIS_H_
