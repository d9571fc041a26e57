// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "marcinlab/grid.hpp"
#include "marcinlab/matrix.hpp"

namespace marcinlab {

// Frequency-pair multiplier sigma(xi, eta): either a dense M x M table over
// one grid (storage-index order) or an arbitrary callable.
class Symbol {
 public:
  static Symbol from_table(const PeriodicGrid& grid, ComplexVector table,
                           std::string description);
  static Symbol from_callable(std::function<Complex(double, double)> fn,
                              std::string description);
  static Symbol constant(Complex c);

  bool is_table() const { return is_table_; }
  const PeriodicGrid& table_grid() const;
  const std::string& description() const { return description_; }
  bool band_truncated() const { return band_truncated_; }
  void set_band_truncated(bool t) { band_truncated_ = t; }

  // Value at storage frequency indices of `grid`; tables must match the grid.
  Complex eval_index(const PeriodicGrid& grid, int a, int b) const;
  // Value at physical frequencies.  Tables fall back to nearest-grid-point
  // lookup and set *interpolated.
  Complex eval(double xi, double eta, bool* interpolated = nullptr) const;

  double sup_norm(const PeriodicGrid& grid) const;

 private:
  bool is_table_ = false;
  std::optional<PeriodicGrid> grid_;
  ComplexVector table_;
  std::function<Complex(double, double)> fn_;
  std::string description_;
  bool band_truncated_ = false;
};

// W_sigma(f,g)(x) = sum_xi sum_eta sigma(xi,eta) fhat(xi) ghat(eta)
// exp(2 pi i x (xi+eta)), evaluated by the per-xi frequency sweep.
GridFunction apply_bilinear(const Symbol& sigma, const GridFunction& f, const GridFunction& g);

// Direct cubic-cost evaluator used for cross-validation; grids up to 64.
GridFunction apply_bilinear_reference(const Symbol& sigma, const GridFunction& f,
                                      const GridFunction& g);

// Fast path for elementary symbols built from a matrix:
// sum_{j,k} a_{jk} (band_j f)(band_k g); exactly the sweep result for the
// matching table, at band-count cost.
GridFunction apply_bilinear_matrix(const Matrix& a, const GridFunction& f,
                                   const GridFunction& g);

// sigma_A(xi, eta) = sum_{j,k} a_{jk} phi_hat(2^-j xi) phi_hat(2^-k eta)
// materialized as a table; rows and columns whose bands spill past the grid
// range mark the symbol truncated.
Symbol sigma_from_matrix(const Matrix& a, const PeriodicGrid& grid);

enum class ParaproductSide { lower, upper };

// Band range used by the paraproducts and partition checks.
struct BandRange {
  int low = 0;
  int high = 0;
};
BandRange paraproduct_band_range(const PeriodicGrid& grid);

// Pi_L(f,g) = sum_j (band_j f) (sum_{k <= j-3} band_k g), and the transposed
// upper variant; evaluated through band projections.
GridFunction paraproduct(const GridFunction& f, const GridFunction& g, ParaproductSide side);

// Matching dense-table symbol (tau_L or tau_U restricted to the grid bands),
// used to cross-check the projection path against the generic engine.
Symbol paraproduct_symbol(const PeriodicGrid& grid, ParaproductSide side);

// Near-diagonal remainder sum_j sum_{|k-j|<=2} (band_j f)(band_k g); the two
// paraproducts plus this remainder reassemble the pointwise product on
// band-interior inputs.
GridFunction paraproduct_diagonal(const GridFunction& f, const GridFunction& g);

// Single lower-paraproduct summand (band_j f) * (sum_{k <= j-3} band_k g).
GridFunction paraproduct_summand(const GridFunction& f, const GridFunction& g, int band);

}  // namespace marcinlab
