// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "marcinlab/dyadic.hpp"

namespace marcinlab {

// Period-L torus sampled at M equispaced points (M a power of two so dyadic
// cells align with grid cells at every level).  Frequencies are m / L for
// integer m in [-M/2, M/2).
struct PeriodicGrid {
  int dimension = 1;
  int points = 0;
  double period = 1.0;

  PeriodicGrid() = default;
  PeriodicGrid(int points_in, double period_in = 1.0, int dimension_in = 1);

  int level_count() const;  // log2(points)
  int frequency_index(int storage_index) const;  // signed m
  double frequency(int storage_index) const { return frequency_index(storage_index) / period; }

  // Largest band index whose bump support is fully representable.
  int max_faithful_band() const;

  bool operator==(const PeriodicGrid&) const = default;
};

// Function on the grid with lazily cached Fourier series coefficients
// c_m = (1/M) sum_i f_i exp(-2 pi i m i / M); f_i = sum_m c_m exp(+...).
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(PeriodicGrid grid, ComplexVector values);
  static GridFunction zero(const PeriodicGrid& grid);
  static GridFunction from_coefficients(const PeriodicGrid& grid, ComplexVector coeffs);
  // Pure wave exp(2 pi i m x / L) for signed integer frequency m.
  static GridFunction wave(const PeriodicGrid& grid, int frequency);

  const PeriodicGrid& grid() const { return grid_; }
  const ComplexVector& values() const { return values_; }
  const ComplexVector& coefficients() const;

  std::size_t size() const { return values_.size(); }

  // Lebesgue norms ((L/M) sum |f|^p)^(1/p).
  double norm_p(double p) const;
  double norm_inf() const;

  GridFunction shifted(int offset) const;       // cyclic translation by grid points
  GridFunction dilated_half() const;            // x -> f(2x mod L), doubles frequencies

 private:
  PeriodicGrid grid_;
  ComplexVector values_;
  mutable ComplexVector coeffs_cache_;
  mutable bool coeffs_valid_ = false;
};

Complex grid_inner_product(const GridFunction& f, const GridFunction& g);

// Smooth radial bumps with exact plateaus:
//   psi_hat = 1 on |x| <= 1, 0 on |x| >= 2;
//   phi_hat(x) = psi_hat(x) - psi_hat(2x), supported on 1/2 <= |x| <= 2;
//   zeta_hat = phi_hat(4x) + phi_hat(8x) + phi_hat(16x), = 1 on [1/16, 1/4].
struct BumpKit {
  double psi_hat(double x) const;
  double phi_hat(double x) const;
  double zeta_hat(double x) const;
};

BumpKit make_bumps();

enum class LpVariant { delta, partial_sum };

struct FilteredFunction {
  GridFunction value;
  bool in_band = true;
};

// Frequency filter by phi_hat(2^-j xi) (delta) or psi_hat(2^-j xi)
// (partial_sum); linear and self-adjoint on the grid inner product.
FilteredFunction lp_project(const GridFunction& f, int band, LpVariant variant);

enum class MartVariant { expectation, difference };

// Dyadic cell averages at level k (2^k cells per period, anchored at 0) and
// their successive differences.
GridFunction grid_mart_diff(const GridFunction& f, int level, MartVariant variant);

struct PowerIterationOptions {
  int max_iterations = 2000;
  double tolerance = 1e-10;
  std::uint64_t seed = 1;
};

struct OperatorNormResult {
  double value = 0.0;
  long long iterations = 0;
  bool converged = false;
};

// Top singular value of the composition (mart difference at `mart_level`)
// after (band filter at `band`), by power iteration on T*T.
OperatorNormResult cross_norm_mart_lp(const PeriodicGrid& grid, int mart_level, int band,
                                      const PowerIterationOptions& opts);

// Top singular value of V_r = sum_j D_j lp_{j+r} (or its adjoint).
OperatorNormResult cross_norm_vr(const PeriodicGrid& grid, int shift, bool adjoint,
                                 const PowerIterationOptions& opts);

}  // namespace marcinlab
