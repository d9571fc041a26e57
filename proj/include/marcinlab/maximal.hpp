// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "marcinlab/dyadic.hpp"
#include "marcinlab/lorentz.hpp"
#include "marcinlab/matrix.hpp"

namespace marcinlab {

// Row j of the output is sum_k a_{jk} D_k f.  Column indices (after offsets)
// must lie in 1..levels.
std::vector<SampleVector> apply_row_operators(const Matrix& a, const SampleVector& f);

// Pointwise max over rows of |sum_k a_{jk} D_k f|; real nonnegative values.
SampleVector maximal_function(const Matrix& a, const SampleVector& f);

enum class EstimateMode { strong, weak, mixed };

std::string estimate_mode_name(EstimateMode mode);

struct EstimateOptions {
  int restarts = 16;
  int max_alternations = 64;
  int max_power_iterations = 500;
  double tolerance = 1e-11;
  std::uint64_t seed = 1;
  // Selector flip polish runs when atoms * rows stays below this.
  std::size_t polish_entry_limit = 256;
  bool attach_bv_upper = false;
  bool attach_trivial_upper = false;
  const WeightSequence* lorentz_weights = nullptr;
};

// Certified lower bound with witness plus optional explicit-constant upper
// bounds.  Non-convergence is reported through `converged`, never thrown.
struct NormEstimate {
  std::string quantity;
  double p = 2.0;
  double q = 0.0;  // secondary exponent for mixed estimates, else 0
  double lower_bound = 0.0;
  ComplexVector witness;
  int witness_levels = 0;
  std::optional<double> weak_threshold;  // best lambda for weak estimates
  std::optional<double> upper_bound;
  std::string upper_provenance;  // "bv" | "trivial" | "lorentz"
  // Constant-free column functional, reported alongside certified bounds.
  std::optional<double> lorentz_functional;
  long long iterations = 0;
  int restarts = 0;
  std::uint64_t seed = 0;
  bool converged = true;
};

// Multi-restart alternating ascent: freeze the pointwise row selector, solve
// the frozen linear operator norm by (nonlinear) power iteration, re-derive
// the selector as the pointwise argmax, repeat.  Offsets are normalized away
// first; the estimate works on the space with levels = number of columns.
NormEstimate estimate_h(const Matrix& a, EstimateMode mode, double p, double q,
                        const EstimateOptions& opts);
inline NormEstimate estimate_h_strong(const Matrix& a, double p, const EstimateOptions& opts) {
  return estimate_h(a, EstimateMode::strong, p, 0.0, opts);
}

// Recomputes the certificate ratio of a stored witness; used by soundness
// checks and by homogeneity tests.
double reevaluate_certificate(const Matrix& a, const NormEstimate& estimate);

// Exact strong(2) constant on a fixed space by exhausting all selector maps
// atoms -> rows and taking the top singular value of each frozen operator.
// Rejects instances with rows^atoms > 10^6.
double exact_h2_oracle(const Matrix& a, const DyadicSpace& space);

struct HEstimate {
  NormEstimate combined;    // quantity "H"
  NormEstimate lower_part;  // strong(2) estimate of the strict lower triangle
  NormEstimate upper_part;  // strong(2) estimate of the transposed strict upper triangle
  double sup_norm = 0.0;
};

// H(A): lower triangle constant + transposed upper triangle constant + sup
// norm, assembled component-wise with certified bounds where requested.
HEstimate estimate_H(const Matrix& a, const EstimateOptions& opts);

// Pointwise sum_{j,k} a_{jk} (D_j f)(D_k g); both row and column indices act
// as martingale levels here.
SampleVector apply_discrete_bilinear(const Matrix& a, const SampleVector& f,
                                     const SampleVector& g);

struct AdversarialPair {
  SampleVector g;
  double weak_lower_bound = 0.0;   // lambda sqrt(P) / ||f||_2 = lambda P / (||f||_2 ||g||_2)
  double evaluated_ratio = 0.0;    // ||V_A(g,f)||_1 / (||f||_2 ||g||_2), g in the first slot
  double level_probability = 0.0;  // P(max_j |f_j| > lambda)
};

// Stopping-time construction: first-passage blocks where the row process
// exceeds lambda, combined with a mean-zero unimodular sign alternation.
AdversarialPair adversarial_pair(const Matrix& a, const SampleVector& f, double lambda);

}  // namespace marcinlab
