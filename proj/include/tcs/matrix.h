// tcs/matrix.h

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

#ifndef TCS_MATRIX_H_
#define TCS_MATRIX_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace tcs {

// Dense row-major matrix of doubles. Sized for desk-scale lattices and
// models; no BLAS backing.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  std::span<double> row(int r) { return {data_.data() + static_cast<size_t>(r) * cols_, static_cast<size_t>(cols_)}; }
  std::span<const double> row(int r) const {
    return {data_.data() + static_cast<size_t>(r) * cols_, static_cast<size_t>(cols_)};
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix& other) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Reads a headerless CSV of decimal floats, one row per line. Every row
// must have the same number of columns. Throws ParseError on malformed
// input or an empty file.
Matrix read_csv_matrix(const std::filesystem::path& path);

// Writes a matrix as CSV with 17 significant digits per value, which
// round-trips doubles exactly.
void write_csv_matrix(const std::filesystem::path& path, const Matrix& m);

// Same format as write_csv_matrix, returned as a string.
std::string format_csv_matrix(const Matrix& m);

}  // namespace tcs

#endif  // TCS_MATRIX_H_
