// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "marcinlab/matrix.hpp"

namespace marcinlab {

enum class WeightKind { log_theta, loglog_theta, explicit_values };

std::string weight_kind_name(WeightKind kind);
WeightKind weight_kind_from_name(const std::string& name);

// Positive non-increasing weights w_1 >= w_2 >= ... materialized to a fixed
// length.  Logarithms are base 2 throughout.
struct WeightSequence {
  WeightKind kind = WeightKind::explicit_values;
  double theta = 0.0;
  std::vector<double> values;

  std::size_t length() const { return values.size(); }
  double at(std::size_t k) const;  // 1-based
};

// kind log_theta:     w_k = (log2(k+1))^-theta
// kind loglog_theta:  w_k = (log2(k+1))^-1 * (log2(max(log2(k+2), 1)))^-theta
WeightSequence make_weight(WeightKind kind, double theta, std::size_t length);
WeightSequence make_weight_explicit(std::vector<double> values);

// Continuous closed forms behind the two generated kinds, evaluated at a real
// index >= 1.  Shared with the smooth symbol families.
double log_weight_value(double theta, double k);
double loglog_weight_value(double theta, double k);

struct ConditionReport {
  double cdn1_empirical_constant = 0.0;  // max over sampled j<=k of w_k (log(k+1)/log(j+1))^theta / w_j
  double cdn2_partial_sum = 0.0;         // sum_{k<=horizon} w_k / k
  bool cdn2_convergent = false;          // heuristic flag from dyadic block sums
  std::vector<double> block_sums;        // S_m = sum over k in [2^m, 2^{m+1}) of w_k/k
};

// Finite-horizon diagnostics for the two weight conditions; never a proof.
// theta_override < 0 uses the sequence's own theta (0 for explicit weights).
ConditionReport check_conditions(const WeightSequence& w, std::size_t horizon,
                                 double theta_override = -1.0);

// sum_k w_k u*_k with u* the decreasing rearrangement of |u|.
double d_norm(std::span<const Complex> u, const WeightSequence& w);
double d_norm(std::span<const double> u, const WeightSequence& w);

// max_k (v*_1 + ... + v*_k) / (w_1 + ... + w_k).
double d_star_norm(std::span<const Complex> v, const WeightSequence& w);
double d_star_norm(std::span<const double> v, const WeightSequence& w);

struct ColumnBoundReport {
  double column_bound = 0.0;  // max_k d*(column k)
  double crude_bound = 0.0;   // max_{j,k} |a_{jk}| / w_{|j-k|+1}
};

// The two bound functionals of the column-norm estimate, without the
// unspecified universal constant; they certify trends, not absolute values.
ColumnBoundReport lorentz_column_bound(const Matrix& a, const WeightSequence& w);

}  // namespace marcinlab
