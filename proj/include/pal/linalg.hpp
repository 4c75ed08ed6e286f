#pragma once

// Dense matrices over a Field, row-major, with Gaussian elimination helpers.

#include <optional>
#include <span>
#include <vector>

#include "pal/field.hpp"

namespace pal {

using Vector = std::vector<Code>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {}
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<Vector>& rows, int cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Code& at(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  Code at(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

  std::span<Code> row(int r) { return {data_.data() + std::size_t(r) * cols_, std::size_t(cols_)}; }
  std::span<const Code> row(int r) const {
    return {data_.data() + std::size_t(r) * cols_, std::size_t(cols_)};
  }

  void append_row(std::span<const Code> values);
  void append_rows(const Matrix& other);
  /// Keep the first `rows` rows.
  void truncate(int rows);

  Matrix transpose() const;
  Matrix slice_cols(int begin, int end) const;

  const std::vector<Code>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Code> data_;
};

/// Brings `m` to reduced row-echelon form in place, drops zero rows, and
/// returns the pivot columns (strictly increasing).
std::vector<int> rref_in_place(const Field& f, Matrix& m);

int rank(const Field& f, Matrix m);

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);
Vector multiply(const Field& f, std::span<const Code> v, const Matrix& m);

std::optional<Matrix> inverse(const Field& f, const Matrix& m);

/// Rows span {v : m v^T = 0}; returned in reduced row-echelon form.
Matrix nullspace(const Field& f, const Matrix& m);

/// Scale so the first nonzero entry is 1. Returns false for the zero vector.
bool normalize(const Field& f, std::span<Code> v);

}  // namespace pal
