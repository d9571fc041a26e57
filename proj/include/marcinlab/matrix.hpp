// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include "marcinlab/dyadic.hpp"

namespace marcinlab {

// Finite complex matrix with index offsets: the entry stored at (r, c)
// represents coefficient a_{jk} with j = r + 1 + row_offset and
// k = c + 1 + col_offset.  Offsets let a finite block stand for a compactly
// supported doubly-infinite matrix and carry translated copies.
struct Matrix {
  int rows = 0;
  int cols = 0;
  int row_offset = 0;
  int col_offset = 0;
  ComplexVector entries;  // row-major

  Matrix() = default;
  Matrix(int rows_in, int cols_in, int row_off = 0, int col_off = 0);

  Complex& at(int r, int c) { return entries[static_cast<std::size_t>(r) * cols + c]; }
  const Complex& at(int r, int c) const {
    return entries[static_cast<std::size_t>(r) * cols + c];
  }

  int row_index(int r) const { return r + 1 + row_offset; }  // j of storage row r
  int col_index(int c) const { return c + 1 + col_offset; }  // k of storage column c

  double sup_norm() const;  // max |a_{jk}|
  bool is_zero() const;
  bool is_strictly_lower_triangular() const;  // a_{jk} = 0 unless k < j

  static Matrix from_rows(const std::vector<ComplexVector>& rows);
  static Matrix from_real_rows(const std::vector<std::vector<double>>& rows);
};

// Zero interleaving: entry a_{rs} moves to position (rows_map[r], cols_map[s]);
// everything else is zero.  Maps are 1-based and strictly increasing.
Matrix insert_zeros(const Matrix& a, const std::vector<int>& rows_map,
                    const std::vector<int>& cols_map);

// Each column repeated n times.
Matrix repeat_columns(const Matrix& a, int n);

// Translated matrix with entries a_{j+r, k+s}.
Matrix translate(const Matrix& a, int r, int s);

// Strictly lower triangle: zero out entries with k >= j.
Matrix lower_triangle(const Matrix& a);

// Transpose of the strict upper triangle.
Matrix upper_triangle_transposed(const Matrix& a);

// Keep entries with |j - k| < width.
Matrix diagonal_band(const Matrix& a, int width);

// 2 * max_j sum_{k=0..N} |a_{j,k} - a_{j,k+1}| with zero boundary terms; the
// factor 2 is the L_2 maximal constant, so this is a certified upper bound
// for the strong(2) maximal operator norm.
double bv_upper_bound(const Matrix& a);

// Certified upper bound sqrt(sum_k (max_j |a_{jk}|)^2), valid for strong(2).
double column_sup_upper_bound(const Matrix& a);

// Centered truncation used for reporting compactly supported infinite
// matrices as a monotone sequence of finite estimates: keeps entries with
// -t < j, k <= t.
Matrix centered_truncation(const Matrix& a, int t);

}  // namespace marcinlab
