// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#include "marcinlab/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace marcinlab {

namespace {

double log2_of(double x) { return std::log2(x); }

}  // namespace

std::string weight_kind_name(WeightKind kind) {
  switch (kind) {
    case WeightKind::log_theta: return "log";
    case WeightKind::loglog_theta: return "loglog";
    case WeightKind::explicit_values: return "explicit";
  }
  return "explicit";
}

WeightKind weight_kind_from_name(const std::string& name) {
  if (name == "log") return WeightKind::log_theta;
  if (name == "loglog") return WeightKind::loglog_theta;
  if (name == "explicit") return WeightKind::explicit_values;
  throw std::invalid_argument("unknown weight kind: " + name);
}

double WeightSequence::at(std::size_t k) const {
  if (k < 1 || k > values.size()) throw std::out_of_range("weight index out of materialized range");
  return values[k - 1];
}

double log_weight_value(double theta, double k) {
  return std::pow(log2_of(k + 1.0), -theta);
}

double loglog_weight_value(double theta, double k) {
  // Inner logarithm clamped below at 1 so small indices stay finite.
  const double inner = std::max(log2_of(k + 2.0), 1.0);
  return std::pow(log2_of(k + 1.0), -1.0) * std::pow(log2_of(inner), -theta);
}

WeightSequence make_weight(WeightKind kind, double theta, std::size_t length) {
  if (kind == WeightKind::explicit_values) {
    throw std::invalid_argument("explicit weights are built with make_weight_explicit");
  }
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  if (length < 1) throw std::invalid_argument("length must be >= 1");
  WeightSequence w;
  w.kind = kind;
  w.theta = theta;
  w.values.resize(length);
  for (std::size_t k = 1; k <= length; ++k) {
    const double x = static_cast<double>(k);
    w.values[k - 1] = (kind == WeightKind::log_theta) ? log_weight_value(theta, x)
                                                      : loglog_weight_value(theta, x);
  }
  for (std::size_t i = 1; i < length; ++i) {
    if (w.values[i] > w.values[i - 1]) {
      throw std::logic_error("generated weight sequence is not non-increasing");
    }
  }
  return w;
}

WeightSequence make_weight_explicit(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("length must be >= 1");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw std::invalid_argument("weights must be strictly positive");
    if (i > 0 && values[i] > values[i - 1]) {
      throw std::invalid_argument("weights must be non-increasing");
    }
  }
  WeightSequence w;
  w.kind = WeightKind::explicit_values;
  w.theta = 0.0;
  w.values = std::move(values);
  return w;
}

ConditionReport check_conditions(const WeightSequence& w, std::size_t horizon,
                                 double theta_override) {
  if (horizon < 1 || horizon > w.length()) {
    throw std::invalid_argument("horizon exceeds materialized weight length");
  }
  const double theta = theta_override >= 0.0 ? theta_override : w.theta;
  ConditionReport report;

  // Sample the (j, k) pairs on a dyadic lattice; the full double loop is
  // quadratic in the horizon.
  std::vector<std::size_t> lattice;
  for (std::size_t v = 1; v <= horizon; v *= 2) {
    lattice.push_back(v);
    if (v + v / 2 <= horizon && v > 1) lattice.push_back(v + v / 2);
  }
  lattice.push_back(horizon);
  std::sort(lattice.begin(), lattice.end());
  lattice.erase(std::unique(lattice.begin(), lattice.end()), lattice.end());
  double worst = 0.0;
  for (std::size_t j : lattice) {
    for (std::size_t k : lattice) {
      if (j > k) continue;
      const double ratio = std::pow(log2_of(static_cast<double>(k) + 1.0) /
                                        log2_of(static_cast<double>(j) + 1.0),
                                    theta);
      worst = std::max(worst, w.at(k) * ratio / w.at(j));
    }
  }
  report.cdn1_empirical_constant = worst;

  double total = 0.0;
  std::vector<double> block_sums;
  std::size_t block_start = 1;
  while (block_start <= horizon) {
    const std::size_t block_end = std::min(horizon + 1, block_start * 2);
    double s = 0.0;
    for (std::size_t k = block_start; k < block_end; ++k) {
      s += w.at(k) / static_cast<double>(k);
    }
    block_sums.push_back(s);
    total += s;
    block_start *= 2;
  }
  report.cdn2_partial_sum = total;
  report.block_sums = block_sums;

  // Heuristic: sum_m S_m behaves like sum m^-theta, which converges exactly
  // when m * S_m keeps falling.  Raw successive ratios S_{m+1}/S_m sit below
  // one even for divergent weights, so they do not discriminate.
  bool convergent = block_sums.size() >= 4;
  for (std::size_t m = block_sums.size() / 2; m + 1 < block_sums.size(); ++m) {
    const double lhs = static_cast<double>(m + 2) * block_sums[m + 1];
    const double rhs = static_cast<double>(m + 1) * block_sums[m];
    if (lhs > rhs * (1.0 - 1e-12)) {
      convergent = false;
      break;
    }
  }
  report.cdn2_convergent = convergent;
  return report;
}

namespace {

double d_norm_impl(std::vector<double> magnitudes, const WeightSequence& w) {
  if (magnitudes.size() > w.length()) {
    throw std::invalid_argument("sequence longer than materialized weights");
  }
  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
  double acc = 0.0;
  for (std::size_t i = 0; i < magnitudes.size(); ++i) acc += w.values[i] * magnitudes[i];
  return acc;
}

double d_star_norm_impl(std::vector<double> magnitudes, const WeightSequence& w) {
  if (magnitudes.size() > w.length()) {
    throw std::invalid_argument("sequence longer than materialized weights");
  }
  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
  double best = 0.0;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    num += magnitudes[i];
    den += w.values[i];
    best = std::max(best, num / den);
  }
  return best;
}

std::vector<double> abs_of(std::span<const Complex> u) {
  std::vector<double> m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) m[i] = std::abs(u[i]);
  return m;
}

}  // namespace

double d_norm(std::span<const Complex> u, const WeightSequence& w) {
  return d_norm_impl(abs_of(u), w);
}

double d_norm(std::span<const double> u, const WeightSequence& w) {
  std::vector<double> m(u.begin(), u.end());
  for (double& x : m) x = std::abs(x);
  return d_norm_impl(std::move(m), w);
}

double d_star_norm(std::span<const Complex> v, const WeightSequence& w) {
  return d_star_norm_impl(abs_of(v), w);
}

double d_star_norm(std::span<const double> v, const WeightSequence& w) {
  std::vector<double> m(v.begin(), v.end());
  for (double& x : m) x = std::abs(x);
  return d_star_norm_impl(std::move(m), w);
}

ColumnBoundReport lorentz_column_bound(const Matrix& a, const WeightSequence& w) {
  if (w.length() < static_cast<std::size_t>(std::max(a.rows, a.cols))) {
    throw std::invalid_argument("weights materialized shorter than matrix dimensions");
  }
  ColumnBoundReport report;
  ComplexVector column(static_cast<std::size_t>(a.rows));
  for (int c = 0; c < a.cols; ++c) {
    for (int r = 0; r < a.rows; ++r) column[static_cast<std::size_t>(r)] = a.at(r, c);
    report.column_bound = std::max(report.column_bound, d_star_norm(column, w));
  }
  for (int r = 0; r < a.rows; ++r) {
    for (int c = 0; c < a.cols; ++c) {
      const std::size_t gap = static_cast<std::size_t>(std::abs(a.row_index(r) - a.col_index(c)));
      report.crude_bound = std::max(report.crude_bound, std::abs(a.at(r, c)) / w.at(gap + 1));
    }
  }
  return report;
}

}  // namespace marcinlab
