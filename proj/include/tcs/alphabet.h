// tcs/alphabet.h

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

#ifndef TCS_ALPHABET_H_
#define TCS_ALPHABET_H_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace tcs {

// Ordered label ids; every id must be a character class of the
// associated alphabet, never a special class.
using LabelSequence = std::vector<int>;

// Class inventory. Special classes (blank for CTC, background and
// foreground for the classification+segmentation topology) are ordinary
// columns of the score matrix, flagged here by index. Everything not
// special is a character class.
struct Alphabet {
  std::vector<std::string> names;
  std::optional<int> blank_id;
  std::optional<int> background_id;
  std::optional<int> foreground_id;

  int num_classes() const { return static_cast<int>(names.size()); }

  bool is_special(int class_id) const {
    return class_id == blank_id || class_id == background_id || class_id == foreground_id;
  }

  // Character classes in index order.
  std::vector<int> character_classes() const;

  // Index of a class name, or -1 when absent.
  int index_of(const std::string& name) const;

  // Checks the structural invariants: nonempty unique names, special
  // indices distinct and in range. Throws ConfigError.
  void validate() const;

  // Convenience builders appending the special classes after the
  // character names.
  static Alphabet with_blank(std::vector<std::string> chars, const std::string& blank = "/");
  static Alphabet with_background_foreground(std::vector<std::string> chars,
                                             const std::string& background = "~",
                                             const std::string& foreground = "+");

  // JSON form: {"names": [...], "blank": idx|null,
  //             "background": idx|null, "foreground": idx|null}
  nlohmann::json to_json() const;
  static Alphabet from_json(const nlohmann::json& j);
};

// Validates that every label id is a character class. Throws ConfigError.
void validate_labels(const LabelSequence& labels, const Alphabet& alphabet);

// Renders labels as their class names joined by separator.
std::string labels_to_string(const LabelSequence& labels, const Alphabet& alphabet,
                             const std::string& separator = ",");

}  // namespace tcs

#endif  // TCS_ALPHABET_H_
