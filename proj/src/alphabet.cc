// tcs/alphabet.cc

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

#include "tcs/alphabet.h"

#include <set>

#include "tcs/error.h"

namespace tcs {

std::vector<int> Alphabet::character_classes() const {
  std::vector<int> chars;
  for (int k = 0; k < num_classes(); ++k)
    if (!is_special(k)) chars.push_back(k);
  return chars;
}

int Alphabet::index_of(const std::string& name) const {
  for (int k = 0; k < num_classes(); ++k)
    if (names[k] == name) return k;
  return -1;
}

void Alphabet::validate() const {
  if (names.empty()) throw ConfigError("alphabet has no classes");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw ConfigError("alphabet has an empty class name");
    if (!seen.insert(n).second) throw ConfigError("duplicate class name '" + n + "'");
  }
  std::set<int> specials;
  for (auto id : {blank_id, background_id, foreground_id}) {
    if (!id) continue;
    if (*id < 0 || *id >= num_classes())
      throw ConfigError("special class index " + std::to_string(*id) + " out of range");
    if (!specials.insert(*id).second)
      throw ConfigError("special class indices must be distinct");
  }
}

Alphabet Alphabet::with_blank(std::vector<std::string> chars, const std::string& blank) {
  Alphabet a;
  a.names = std::move(chars);
  a.names.push_back(blank);
  a.blank_id = a.num_classes() - 1;
  a.validate();
  return a;
}

Alphabet Alphabet::with_background_foreground(std::vector<std::string> chars,
                                              const std::string& background,
                                              const std::string& foreground) {
  Alphabet a;
  a.names = std::move(chars);
  a.names.push_back(background);
  a.names.push_back(foreground);
  a.background_id = a.num_classes() - 2;
  a.foreground_id = a.num_classes() - 1;
  a.validate();
  return a;
}

nlohmann::json Alphabet::to_json() const {
  nlohmann::json j;
  j["names"] = names;
  j["blank"] = blank_id ? nlohmann::json(*blank_id) : nlohmann::json(nullptr);
  j["background"] = background_id ? nlohmann::json(*background_id) : nlohmann::json(nullptr);
  j["foreground"] = foreground_id ? nlohmann::json(*foreground_id) : nlohmann::json(nullptr);
  return j;
}

static std::optional<int> optional_index(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<int>();
}

Alphabet Alphabet::from_json(const nlohmann::json& j) {
  Alphabet a;
  try {
    a.names = j.at("names").get<std::vector<std::string>>();
    a.blank_id = optional_index(j, "blank");
    a.background_id = optional_index(j, "background");
    a.foreground_id = optional_index(j, "foreground");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad alphabet JSON: ") + e.what());
  }
  a.validate();
  return a;
}

void validate_labels(const LabelSequence& labels, const Alphabet& alphabet) {
  for (int id : labels) {
    if (id < 0 || id >= alphabet.num_classes())
      throw ConfigError("label id " + std::to_string(id) + " out of range");
    if (alphabet.is_special(id))
      throw ConfigError("label id " + std::to_string(id) + " ('" + alphabet.names[id] +
                        "') is a special class");
  }
}

std::string labels_to_string(const LabelSequence& labels, const Alphabet& alphabet,
                             const std::string& separator) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += separator;
    out += alphabet.names[labels[i]];
  }
  return out;
}

}  // namespace tcs
