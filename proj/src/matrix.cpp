// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#include "marcinlab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace marcinlab {

Matrix::Matrix(int rows_in, int cols_in, int row_off, int col_off)
    : rows(rows_in), cols(cols_in), row_offset(row_off), col_offset(col_off) {
  if (rows_in < 0 || cols_in < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
  entries.assign(static_cast<std::size_t>(rows_in) * cols_in, Complex{0.0, 0.0});
}

double Matrix::sup_norm() const {
  double m = 0.0;
  for (const Complex& v : entries) m = std::max(m, std::abs(v));
  return m;
}

bool Matrix::is_zero() const {
  for (const Complex& v : entries) {
    if (v != Complex{0.0, 0.0}) return false;
  }
  return true;
}

bool Matrix::is_strictly_lower_triangular() const {
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (col_index(c) >= row_index(r) && at(r, c) != Complex{0.0, 0.0}) return false;
    }
  }
  return true;
}

Matrix Matrix::from_rows(const std::vector<ComplexVector>& data) {
  if (data.empty()) return Matrix(0, 0);
  Matrix m(static_cast<int>(data.size()), static_cast<int>(data.front().size()));
  for (int r = 0; r < m.rows; ++r) {
    if (static_cast<int>(data[r].size()) != m.cols) {
      throw std::invalid_argument("ragged matrix rows");
    }
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = data[r][c];
  }
  return m;
}

Matrix Matrix::from_real_rows(const std::vector<std::vector<double>>& data) {
  std::vector<ComplexVector> rows;
  rows.reserve(data.size());
  for (const auto& row : data) {
    ComplexVector cr;
    cr.reserve(row.size());
    for (double x : row) cr.emplace_back(x, 0.0);
    rows.push_back(std::move(cr));
  }
  return from_rows(rows);
}

namespace {

void check_map(const std::vector<int>& map, int expected_size, const char* what) {
  if (static_cast<int>(map.size()) != expected_size) {
    throw std::invalid_argument(std::string(what) + " map size does not match matrix");
  }
  int prev = 0;
  for (int v : map) {
    if (v <= prev) throw std::invalid_argument(std::string(what) + " map must be strictly increasing and positive");
    prev = v;
  }
}

}  // namespace

Matrix insert_zeros(const Matrix& a, const std::vector<int>& rows_map,
                    const std::vector<int>& cols_map) {
  check_map(rows_map, a.rows, "row");
  check_map(cols_map, a.cols, "column");
  const int new_rows = a.rows ? rows_map.back() : 0;
  const int new_cols = a.cols ? cols_map.back() : 0;
  Matrix b(new_rows, new_cols, a.row_offset, a.col_offset);
  for (int r = 0; r < a.rows; ++r) {
    for (int c = 0; c < a.cols; ++c) {
      b.at(rows_map[r] - 1, cols_map[c] - 1) = a.at(r, c);
    }
  }
  return b;
}

Matrix repeat_columns(const Matrix& a, int n) {
  if (n < 1) throw std::invalid_argument("column repetition count must be >= 1");
  Matrix b(a.rows, a.cols * n, a.row_offset, a.col_offset * n);
  for (int r = 0; r < a.rows; ++r) {
    for (int c = 0; c < a.cols; ++c) {
      for (int i = 0; i < n; ++i) b.at(r, c * n + i) = a.at(r, c);
    }
  }
  return b;
}

Matrix translate(const Matrix& a, int r, int s) {
  Matrix b = a;
  b.row_offset -= r;
  b.col_offset -= s;
  return b;
}

Matrix lower_triangle(const Matrix& a) {
  Matrix b = a;
  for (int r = 0; r < b.rows; ++r) {
    for (int c = 0; c < b.cols; ++c) {
      if (b.col_index(c) >= b.row_index(r)) b.at(r, c) = Complex{0.0, 0.0};
    }
  }
  return b;
}

Matrix upper_triangle_transposed(const Matrix& a) {
  // b_{jk} = a_{kj} when k < j; the result is strictly lower triangular with
  // swapped offsets.
  Matrix b(a.cols, a.rows, a.col_offset, a.row_offset);
  for (int r = 0; r < a.rows; ++r) {
    for (int c = 0; c < a.cols; ++c) {
      if (a.col_index(c) > a.row_index(r)) b.at(c, r) = a.at(r, c);
    }
  }
  return b;
}

Matrix diagonal_band(const Matrix& a, int width) {
  if (width < 1) throw std::invalid_argument("band width must be >= 1");
  Matrix b = a;
  for (int r = 0; r < b.rows; ++r) {
    for (int c = 0; c < b.cols; ++c) {
      if (std::abs(b.row_index(r) - b.col_index(c)) >= width) b.at(r, c) = Complex{0.0, 0.0};
    }
  }
  return b;
}

double bv_upper_bound(const Matrix& a) {
  double worst = 0.0;
  for (int r = 0; r < a.rows; ++r) {
    double var = 0.0;
    Complex prev{0.0, 0.0};
    for (int c = 0; c < a.cols; ++c) {
      var += std::abs(a.at(r, c) - prev);
      prev = a.at(r, c);
    }
    var += std::abs(prev);  // boundary term a_{j,N+1} = 0
    worst = std::max(worst, var);
  }
  return 2.0 * worst;
}

double column_sup_upper_bound(const Matrix& a) {
  double acc = 0.0;
  for (int c = 0; c < a.cols; ++c) {
    double colmax = 0.0;
    for (int r = 0; r < a.rows; ++r) colmax = std::max(colmax, std::abs(a.at(r, c)));
    acc += colmax * colmax;
  }
  return std::sqrt(acc);
}

Matrix centered_truncation(const Matrix& a, int t) {
  if (t < 1) throw std::invalid_argument("truncation size must be >= 1");
  // Indices j, k in (-t, t]; stored with offset -t so the block is 2t x 2t.
  Matrix b(2 * t, 2 * t, -t, -t);
  for (int r = 0; r < a.rows; ++r) {
    const int j = a.row_index(r);
    if (j <= -t || j > t) continue;
    for (int c = 0; c < a.cols; ++c) {
      const int k = a.col_index(c);
      if (k <= -t || k > t) continue;
      b.at(j + t - 1, k + t - 1) = a.at(r, c);
    }
  }
  return b;
}

}  // namespace marcinlab
