// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace marcinlab {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Probability space with 2^levels equally likely atoms and the dyadic
// filtration whose level-k sigma-algebra has 2^k contiguous blocks of
// 2^(levels-k) atoms each.
struct DyadicSpace {
  int levels = 0;

  explicit DyadicSpace(int levels_in);
  DyadicSpace() = default;

  std::size_t atom_count() const { return std::size_t{1} << levels; }
  std::size_t block_size(int k) const;   // atoms per level-k block
  std::size_t block_count(int k) const;  // 2^k

  bool operator==(const DyadicSpace&) const = default;

  // Space implied by a vector length, which must be a power of two.
  static DyadicSpace from_size(std::size_t size);
};

// Complex-valued function on the atoms.  Norms are probability-normalized:
// ||f||_p = (2^-N sum |f|^p)^(1/p).
struct SampleVector {
  DyadicSpace space;
  ComplexVector values;

  SampleVector() = default;
  SampleVector(DyadicSpace s, ComplexVector v);
  static SampleVector zero(DyadicSpace s);
  static SampleVector constant(DyadicSpace s, Complex c);

  std::size_t size() const { return values.size(); }

  double norm_p(double p) const;
  double norm_inf() const;
};

// Probability inner product 2^-N sum f conj(g).
Complex inner_product(const SampleVector& f, const SampleVector& g);

// E_k f: block means at level k, 0 <= k <= levels.
SampleVector conditional_expectation(const SampleVector& f, int k);

// D_k f = E_k f - E_{k-1} f, 1 <= k <= levels.
SampleVector martingale_difference(const SampleVector& f, int k);

// Inverse of the telescoping decomposition: level0 + sum of differences.
// level0 plays the role of E_0 f, diffs[i] the role of D_{i+1} f.
SampleVector martingale_synthesis(const SampleVector& level0,
                                  std::span<const SampleVector> diffs);

}  // namespace marcinlab
