// tcs/trellis.cc

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

#include "tcs/trellis.h"

#include <algorithm>
#include <limits>

#include "tcs/error.h"

namespace tcs {

const char* to_string(TopologyKind kind) {
  return kind == TopologyKind::kCtc ? "ctc" : "tcs";
}

const char* to_string(StateRole role) {
  switch (role) {
    case StateRole::kBlank: return "blank";
    case StateRole::kBackground: return "background";
    case StateRole::kForeground: return "foreground";
    case StateRole::kCharacter: return "character";
  }
  return "?";
}

bool StateTrellis::is_start(int s) const {
  return std::find(start_states.begin(), start_states.end(), s) != start_states.end();
}

bool StateTrellis::is_end(int s) const {
  return std::find(end_states.begin(), end_states.end(), s) != end_states.end();
}

static void derive_successors(StateTrellis& trellis) {
  trellis.successors.assign(trellis.num_states(), {});
  for (int s = 0; s < trellis.num_states(); ++s)
    for (int p : trellis.predecessors[s]) trellis.successors[p].push_back(s);
  for (auto& succ : trellis.successors) std::sort(succ.begin(), succ.end());
  std::sort(trellis.start_states.begin(), trellis.start_states.end());
  std::sort(trellis.end_states.begin(), trellis.end_states.end());
}

StateTrellis expand_ctc(const LabelSequence& labels, const Alphabet& alphabet) {
  alphabet.validate();
  if (!alphabet.blank_id) throw ConfigError("CTC expansion needs an alphabet with a blank class");
  validate_labels(labels, alphabet);

  const int num_labels = static_cast<int>(labels.size());
  const int num_states = 2 * num_labels + 1;
  StateTrellis trellis;
  trellis.kind = TopologyKind::kCtc;
  trellis.states.reserve(num_states);
  trellis.predecessors.resize(num_states);

  // blank, c1, blank, c2, ..., cU, blank
  for (int u = 0; u < num_labels; ++u) {
    trellis.states.push_back({*alphabet.blank_id, StateRole::kBlank, u});
    trellis.states.push_back({labels[u], StateRole::kCharacter, u});
  }
  trellis.states.push_back({*alphabet.blank_id, StateRole::kBlank, num_labels});

  for (int s = 0; s < num_states; ++s) {
    auto& preds = trellis.predecessors[s];
    // The skip over a blank is allowed only between distinct labels;
    // identical neighbours must keep the separating blank or they would
    // merge under collapse.
    if (s >= 2 && trellis.states[s].role == StateRole::kCharacter &&
        trellis.states[s].class_id != trellis.states[s - 2].class_id) {
      preds.push_back(s - 2);
    }
    if (s >= 1) preds.push_back(s - 1);
    preds.push_back(s);
  }

  trellis.start_states = {0};
  trellis.end_states = {num_states - 1};
  if (num_labels > 0) {
    trellis.start_states.push_back(1);
    trellis.end_states.push_back(num_states - 2);
  }
  derive_successors(trellis);
  return trellis;
}

StateTrellis expand_tcs(const LabelSequence& labels, const Alphabet& alphabet) {
  alphabet.validate();
  if (!alphabet.background_id || !alphabet.foreground_id)
    throw ConfigError("TCS expansion needs an alphabet with background and foreground classes");
  validate_labels(labels, alphabet);

  const int num_labels = static_cast<int>(labels.size());
  const int num_states = 3 * num_labels + 1;
  StateTrellis trellis;
  trellis.kind = TopologyKind::kTcs;
  trellis.states.reserve(num_states);
  trellis.predecessors.resize(num_states);

  // ~, +, c1, ~, +, c2, ..., ~, +, cU, ~
  for (int u = 0; u < num_labels; ++u) {
    trellis.states.push_back({*alphabet.background_id, StateRole::kBackground, u});
    trellis.states.push_back({*alphabet.foreground_id, StateRole::kForeground, u});
    trellis.states.push_back({labels[u], StateRole::kCharacter, u});
  }
  trellis.states.push_back({*alphabet.background_id, StateRole::kBackground, num_labels});

  for (int u = 0; u < num_labels; ++u) {
    const int bg = 3 * u, fg = 3 * u + 1, ch = 3 * u + 2;
    // background_u: from the previous character (background is optional
    // looking forward, so the character may also jump straight to the
    // next foreground).
    if (u > 0) trellis.predecessors[bg].push_back(ch - 3);
    trellis.predecessors[bg].push_back(bg);
    // foreground_u: from its background, or from the previous character
    // when that background is skipped.
    if (u > 0) trellis.predecessors[fg].push_back(ch - 3);
    trellis.predecessors[fg].push_back(bg);
    trellis.predecessors[fg].push_back(fg);
    // character_u: only from its foreground.
    trellis.predecessors[ch].push_back(fg);
    trellis.predecessors[ch].push_back(ch);
  }
  const int trailing = 3 * num_labels;
  if (num_labels > 0) trellis.predecessors[trailing].push_back(trailing - 1);
  trellis.predecessors[trailing].push_back(trailing);
  for (auto& preds : trellis.predecessors) std::sort(preds.begin(), preds.end());

  trellis.start_states = {0};
  trellis.end_states = {num_states - 1};
  if (num_labels > 0) {
    trellis.start_states.push_back(1);          // leading background is optional
    trellis.end_states.push_back(num_states - 2);  // trailing background is optional
  }
  derive_successors(trellis);
  return trellis;
}

StateTrellis expand(const LabelSequence& labels, const Alphabet& alphabet, TopologyKind kind) {
  return kind == TopologyKind::kCtc ? expand_ctc(labels, alphabet)
                                    : expand_tcs(labels, alphabet);
}

LabelSequence collapse(const std::vector<int>& class_path, const Alphabet& alphabet,
                       TopologyKind kind) {
  alphabet.validate();
  if (kind == TopologyKind::kCtc && !alphabet.blank_id)
    throw ConfigError("CTC collapse needs a blank class");
  if (kind == TopologyKind::kTcs && (!alphabet.background_id || !alphabet.foreground_id))
    throw ConfigError("TCS collapse needs background and foreground classes");

  LabelSequence out;
  int previous = -1;
  for (int k : class_path) {
    if (k < 0 || k >= alphabet.num_classes())
      throw ConfigError("class id " + std::to_string(k) + " out of range");
    if (k == previous) continue;  // merge repeats first
    previous = k;
    if (kind == TopologyKind::kCtc) {
      if (k == *alphabet.blank_id) continue;
    } else {
      if (k == *alphabet.background_id || k == *alphabet.foreground_id) continue;
    }
    out.push_back(k);
  }
  return out;
}

int min_frames(const StateTrellis& trellis) {
  // Fewest states a start-to-end path must visit; self-loops never help.
  constexpr int kUnreached = std::numeric_limits<int>::max();
  std::vector<int> dist(trellis.num_states(), kUnreached);
  for (int s : trellis.start_states) dist[s] = 1;
  // Predecessors precede their successors in index order, so one sweep
  // settles the DAG of non-self transitions.
  for (int s = 0; s < trellis.num_states(); ++s) {
    for (int p : trellis.predecessors[s]) {
      if (p == s || dist[p] == kUnreached) continue;
      dist[s] = std::min(dist[s], dist[p] + 1);
    }
  }
  int best = kUnreached;
  for (int s : trellis.end_states) best = std::min(best, dist[s]);
  return best;
}

}  // namespace tcs
