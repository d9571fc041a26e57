// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "marcinlab/bilinear.hpp"
#include "marcinlab/maximal.hpp"

namespace marcinlab {

// sigma windowed to the dyadic rectangle (j, k).
Symbol symbol_breakup(const Symbol& sigma, int j, int k);

struct CoefficientBlock {
  int j = 0;
  int k = 0;
  ComplexVector coeffs;  // (2K+1)^2, index (nu+K)*(2K+1) + (rho+K)
};

struct CoefficientTable {
  int cutoff = 0;             // K
  int quadrature_points = 0;  // Q
  std::vector<CoefficientBlock> blocks;

  const CoefficientBlock* find(int j, int k) const;
  Complex at(int j, int k, int nu, int rho) const;
};

// Lattice coefficients of the rescaled windowed block by trapezoidal
// quadrature on the period-1 cell (exact to spectral accuracy for the
// compactly supported integrand).  Q must be a power of two with Q >= 4K.
ComplexVector fourier_coefficient_block(const Symbol& sigma, int j, int k, int cutoff,
                                        int quadrature);
CoefficientTable fourier_coefficients(const Symbol& sigma, int j_low, int j_high, int k_low,
                                      int k_high, int cutoff, int quadrature);

// Value of the windowed lattice expansion truncated at `cutoff`; throws when
// a block inside the active windows is missing from the table.
Complex resynthesize_value(const CoefficientTable& table, int cutoff, double xi, double eta);

struct ResynthesisReport {
  int cutoff = 0;
  double sup_error = 0.0;
  int samples = 0;
};

// Sup error of the truncated expansion against sigma over +-[1,2]*2^band
// sample products for bands in [band_low, band_high].
ResynthesisReport resynthesis_error(const Symbol& sigma, const CoefficientTable& table,
                                    int cutoff, int band_low, int band_high,
                                    int samples_per_band);

struct HNormOptions {
  int scale_range = 4;       // J: matrices run over scales -J..J
  int samples_per_axis = 4;  // magnitudes sampled in [1, 2] per axis
  int derivative_order = 0;  // N in the derivative-weighted variant
  double fd_step_relative = 1e-4;
  EstimateOptions estimate;
};

struct HNormReport {
  double value = 0.0;        // full (normH2)-style sum for the requested order
  double base_term = 0.0;    // plain sampled sup of H over scale matrices
  std::vector<double> xi_terms;   // per order 0..N
  std::vector<double> eta_terms;  // per order 0..N
  bool interpolated_table = false;
};

// Sampled sup over the annulus product of H applied to the scale matrices
// (sigma(2^j xi, 2^k eta))_{j,k}.  Derivative terms use exact callables when
// supplied, otherwise central finite differences (orders 1 and 2).
HNormReport h_norm_estimate(
    const Symbol& sigma, const HNormOptions& opts,
    const std::vector<std::function<Complex(double, double)>>& xi_derivatives = {},
    const std::vector<std::function<Complex(double, double)>>& eta_derivatives = {});

enum class SymbolFamily { plain_counterexample, log_theta, loglog, strong_log };

SymbolFamily symbol_family_from_name(const std::string& name);
std::string symbol_family_name(SymbolFamily family);

// Test families for the modified Marcinkiewicz conditions.  The log and
// loglog kinds evaluate the matching weight law at a smoothly guarded index
// (exactly 1 below ratio gap 1, exactly t above 2) so they are smooth across
// the diagonal; strong_log is the first-derivative family (1+gap)^-theta.
// plain_counterexample materializes the sign-matrix symbol on the grid.
Symbol marcinkiewicz_symbol(SymbolFamily family, double theta, int n = 0,
                            const PeriodicGrid* grid = nullptr);

struct MultiplierOptions {
  int restarts = 6;
  int max_sweeps = 20;          // alternations between the two inputs
  int max_inner_iterations = 40;
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
};

struct BoundednessReport {
  double p1 = 2.0;
  double p2 = 2.0;
  double p0 = 1.0;
  std::string mode = "strong";
  double certificate = 0.0;  // best ratio ||W(f,g)||_{p0} / (||f||_{p1} ||g||_{p2})
  ComplexVector witness_f;
  ComplexVector witness_g;
  int grid_points = 0;
  double grid_period = 1.0;
  std::optional<double> weak_threshold;
  std::optional<double> h_functional;  // attached by the equivalence driver
  std::optional<double> ratio;         // h_functional / certificate
  long long iterations = 0;
  std::uint64_t seed = 0;
  bool converged = true;
  // All grid weak-norm results are periodized surrogates of the line.
  bool periodization_caveat = true;
};

// Alternating maximization of the bilinear ratio with multi-restart seeded
// starts; deterministic given the seed.  The generic entry works for any
// symbol; the matrix entry uses the elementary band fast path.
BoundednessReport estimate_multiplier_norm(const Symbol& sigma, const PeriodicGrid& grid,
                                           double p1, double p2, bool weak,
                                           const MultiplierOptions& opts);
BoundednessReport estimate_multiplier_norm_matrix(const Matrix& a, const PeriodicGrid& grid,
                                                  double p1, double p2, bool weak,
                                                  const MultiplierOptions& opts);

// Re-evaluates the stored witness pair (used by soundness and homogeneity
// checks); returns the strong-mode ratio.
double reevaluate_multiplier_certificate(const Symbol& sigma, const PeriodicGrid& grid,
                                         const BoundednessReport& report);

struct EquivalenceRow {
  double parameter = 0.0;
  int grid_points = 0;
  double h_lower = 0.0;
  std::optional<double> h_upper;
  double certificate = 0.0;
  double ratio = 0.0;  // h_lower / certificate
};

// One family member: H functional estimate plus multiplier certificate on a
// grid sized to the member's bands.
EquivalenceRow equivalence_row(const Matrix& a, const PeriodicGrid& grid, double parameter,
                               double p1, double p2, const MultiplierOptions& mult_opts,
                               const EstimateOptions& est_opts);

}  // namespace marcinlab
