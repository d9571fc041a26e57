// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#include "marcinlab/counterexamples.hpp"

#include <cmath>
#include <stdexcept>

#include "marcinlab/maximal.hpp"

namespace marcinlab {

Matrix sign_matrix(int n, double theta) {
  if (n < 1) throw std::invalid_argument("sign matrix needs n >= 1");
  if (n > 20) throw std::length_error("sign matrix limited to n <= 20 (2^n rows)");
  const int rows = 1 << n;
  Matrix a(rows, n);
  const double scale = std::pow(static_cast<double>(n), -theta);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < n; ++c) {
      const double sign = ((r >> c) & 1) ? -1.0 : 1.0;
      a.at(r, c) = Complex{sign * scale, 0.0};
    }
  }
  return a;
}

SampleVector rademacher_witness(const DyadicSpace& space) {
  SampleVector f = SampleVector::zero(space);
  const std::size_t atoms = space.atom_count();
  for (std::size_t w = 0; w < atoms; ++w) {
    double v = 0.0;
    for (int k = 1; k <= space.levels; ++k) {
      v += ((w >> (space.levels - k)) & 1U) ? -1.0 : 1.0;
    }
    f.values[w] = Complex{v, 0.0};
  }
  return f;
}

CounterexampleReport verify_counterexample(int n, double theta) {
  if (n < 1) throw std::invalid_argument("counterexample needs n >= 1");
  if (n > 14) throw std::length_error("counterexample evaluation limited to n <= 14");
  const Matrix a = sign_matrix(n, theta);
  const DyadicSpace space(n);
  const SampleVector f = rademacher_witness(space);
  const SampleVector maxfun = maximal_function(a, f);
  CounterexampleReport report;
  report.n = n;
  report.theta = theta;
  report.rows = a.rows;
  report.cols = a.cols;
  report.ratio = maxfun.norm_p(2.0) / f.norm_p(2.0);
  report.target = std::pow(static_cast<double>(n), 0.5 - theta);
  report.exact_match = std::abs(report.ratio - report.target) <= 1e-9;
  return report;
}

Matrix band_matrix(const WeightSequence& w, int size) {
  if (size < 1) throw std::invalid_argument("band matrix needs size >= 1");
  if (w.length() < static_cast<std::size_t>(size)) {
    throw std::invalid_argument("weights materialized shorter than band size");
  }
  Matrix a(size, size);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      a.at(r, c) = Complex{w.at(static_cast<std::size_t>(std::abs(r - c)) + 1), 0.0};
    }
  }
  return a;
}

}  // namespace marcinlab
