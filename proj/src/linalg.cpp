#include "pal/linalg.hpp"

#include <algorithm>
#include <utility>

namespace pal {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, int cols) {
  Matrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

void Matrix::append_row(std::span<const Code> values) {
  require(static_cast<int>(values.size()) == cols_, ErrorKind::InvalidArgument,
          "row length does not match matrix width");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void Matrix::append_rows(const Matrix& other) {
  require(other.cols_ == cols_, ErrorKind::InvalidArgument, "matrix widths differ");
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

void Matrix::truncate(int rows) {
  rows_ = std::min(rows_, rows);
  data_.resize(std::size_t(rows_) * cols_);
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Matrix Matrix::slice_cols(int begin, int end) const {
  Matrix s(rows_, end - begin);
  for (int r = 0; r < rows_; ++r)
    for (int c = begin; c < end; ++c) s.at(r, c - begin) = at(r, c);
  return s;
}

std::vector<int> rref_in_place(const Field& f, Matrix& m) {
  std::vector<int> pivots;
  int lead = 0;
  const int rows = m.rows();
  const int cols = m.cols();
  for (int col = 0; col < cols && lead < rows; ++col) {
    int sel = -1;
    for (int r = lead; r < rows; ++r) {
      if (m.at(r, col) != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != lead) {
      auto a = m.row(sel);
      auto b = m.row(lead);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto prow = m.row(lead);
    const Code scale = f.inv(prow[col]);
    for (int c = col; c < cols; ++c) prow[c] = f.mul(prow[c], scale);
    for (int r = 0; r < rows; ++r) {
      if (r == lead) continue;
      const Code factor = m.at(r, col);
      if (factor == 0) continue;
      auto row = m.row(r);
      for (int c = col; c < cols; ++c) row[c] = f.sub(row[c], f.mul(factor, prow[c]));
    }
    pivots.push_back(col);
    ++lead;
  }
  m.truncate(lead);
  return pivots;
}

int rank(const Field& f, Matrix m) { return static_cast<int>(rref_in_place(f, m).size()); }

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), ErrorKind::InvalidArgument, "matrix shapes do not conform");
  Matrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Code aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) out.at(i, j) = f.add(out.at(i, j), f.mul(aik, b.at(k, j)));
    }
  }
  return out;
}

Vector multiply(const Field& f, std::span<const Code> v, const Matrix& m) {
  require(static_cast<int>(v.size()) == m.rows(), ErrorKind::InvalidArgument,
          "vector length does not match matrix height");
  Vector out(m.cols(), 0);
  for (int k = 0; k < m.rows(); ++k) {
    if (v[k] == 0) continue;
    for (int j = 0; j < m.cols(); ++j) out[j] = f.add(out[j], f.mul(v[k], m.at(k, j)));
  }
  return out;
}

std::optional<Matrix> inverse(const Field& f, const Matrix& m) {
  require(m.rows() == m.cols(), ErrorKind::InvalidArgument, "inverse of a non-square matrix");
  const int n = m.rows();
  Matrix aug(n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  const auto pivots = rref_in_place(f, aug);
  if (static_cast<int>(pivots.size()) < n || pivots[n - 1] != n - 1) return std::nullopt;
  return aug.slice_cols(n, 2 * n);
}

Matrix nullspace(const Field& f, const Matrix& m) {
  Matrix reduced = m;
  const auto pivots = rref_in_place(f, reduced);
  const int cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  Matrix basis(0, cols);
  Vector v(cols);
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      v[pivots[r]] = f.neg(reduced.at(static_cast<int>(r), free));
    }
    basis.append_row(v);
  }
  rref_in_place(f, basis);
  return basis;
}

bool normalize(const Field& f, std::span<Code> v) {
  auto it = std::find_if(v.begin(), v.end(), [](Code c) { return c != 0; });
  if (it == v.end()) return false;
  if (*it == 1) return true;
  const Code scale = f.inv(*it);
  for (auto jt = it; jt != v.end(); ++jt) *jt = f.mul(*jt, scale);
  return true;
}

}  // namespace pal
