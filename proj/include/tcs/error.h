// tcs/error.h

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

#ifndef TCS_ERROR_H_
#define TCS_ERROR_H_

#include <stdexcept>
#include <string>

namespace tcs {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed external input: files that do not parse, dimension
// mismatches between inputs, non-finite scores.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Invalid configuration or arguments: broken alphabet, label ids out of
// range, empty duration ranges.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// The label sequence cannot be aligned to the given number of frames
// (T < min_frames, or no valid path has nonzero probability).
class InfeasibleLabelError : public Error {
 public:
  explicit InfeasibleLabelError(const std::string& msg) : Error(msg) {}
};

// A brute-force enumeration exceeded its explosion guard.
class GuardError : public Error {
 public:
  explicit GuardError(const std::string& msg) : Error(msg) {}
};

}  // namespace tcs

#endif  // TCS_ERROR_H_
