// tcs/decoder.cc

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

#include "tcs/decoder.h"

#include <cmath>

#include "tcs/error.h"
#include "tcs/logmath.h"

namespace tcs {

LabelSequence greedy_decode(const Matrix& probs, const Alphabet& alphabet, TopologyKind kind) {
  std::vector<int> argmax(probs.rows());
  for (int t = 0; t < probs.rows(); ++t) {
    int best = 0;
    for (int k = 1; k < probs.cols(); ++k)
      if (probs(t, k) > probs(t, best)) best = k;
    argmax[t] = best;
  }
  return collapse(argmax, alphabet, kind);
}

Alignment viterbi_align(const Matrix& probs, const StateTrellis& trellis) {
  const int need = min_frames(trellis);
  if (probs.rows() < need) {
    throw InfeasibleLabelError("label needs at least " + std::to_string(need) +
                               " frames (min_frames=" + std::to_string(need) + "), got " +
                               std::to_string(probs.rows()));
  }
  const int num_frames = probs.rows();
  const int num_states = trellis.num_states();

  Matrix delta(num_frames, num_states, kLogZero);
  std::vector<std::vector<int>> backptr(num_frames, std::vector<int>(num_states, -1));

  for (int s : trellis.start_states)
    delta(0, s) = std::log(probs(0, trellis.states[s].class_id));

  for (int t = 1; t < num_frames; ++t) {
    for (int s = 0; s < num_states; ++s) {
      // Predecessor lists are ascending; keeping strict '>' makes ties
      // resolve to the smallest state index.
      double best = kLogZero;
      int best_pred = -1;
      for (int p : trellis.predecessors[s]) {
        if (delta(t - 1, p) == kLogZero) continue;
        if (best_pred < 0 || delta(t - 1, p) > best) {
          best = delta(t - 1, p);
          best_pred = p;
        }
      }
      if (best_pred < 0) continue;
      delta(t, s) = best + std::log(probs(t, trellis.states[s].class_id));
      backptr[t][s] = best_pred;
    }
  }

  // end_states is ascending, so a tie keeps the smaller state index.
  int best_end = -1;
  double best_score = kLogZero;
  for (int s : trellis.end_states) {
    if (delta(num_frames - 1, s) == kLogZero) continue;
    if (best_end < 0 || delta(num_frames - 1, s) > best_score) {
      best_score = delta(num_frames - 1, s);
      best_end = s;
    }
  }
  if (best_end < 0) throw InfeasibleLabelError("no valid path has nonzero probability");

  Alignment alignment;
  alignment.log_prob = best_score;
  alignment.state_path.resize(num_frames);
  int state = best_end;
  for (int t = num_frames - 1; t >= 0; --t) {
    alignment.state_path[t] = state;
    if (t > 0) state = backptr[t][state];
  }
  alignment.segments = extract_segments(alignment.state_path, trellis);
  return alignment;
}

std::vector<Segment> extract_segments(const std::vector<int>& state_path,
                                      const StateTrellis& trellis) {
  std::vector<Segment> segments;
  for (int t = 0; t < static_cast<int>(state_path.size()); ++t) {
    if (!segments.empty() && state_path[t] == state_path[t - 1]) {
      segments.back().end_frame = t;
      continue;
    }
    const TrellisState& st = trellis.states[state_path[t]];
    segments.push_back({st.class_id, st.role, t, t});
  }
  return segments;
}

std::vector<Segment> merge_speech_spans(const std::vector<Segment>& segments) {
  std::vector<Segment> merged;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].role == StateRole::kForeground && i + 1 < segments.size() &&
        segments[i + 1].role == StateRole::kCharacter) {
      Segment span = segments[i + 1];
      span.start_frame = segments[i].start_frame;
      merged.push_back(span);
      ++i;
    } else {
      merged.push_back(segments[i]);
    }
  }
  return merged;
}

nlohmann::json segments_to_json(const std::vector<Segment>& segments, const Alphabet& alphabet) {
  nlohmann::json j = nlohmann::json::array();
  for (const Segment& seg : segments) {
    j.push_back({{"label", alphabet.names[seg.class_id]},
                 {"role", to_string(seg.role)},
                 {"start", seg.start_frame},
                 {"end", seg.end_frame}});
  }
  return j;
}

}  // namespace tcs
