// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#include "marcinlab/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace marcinlab {

DyadicSpace::DyadicSpace(int levels_in) : levels(levels_in) {
  if (levels_in < 0 || levels_in > 30) {
    throw std::invalid_argument("dyadic space levels must be in [0, 30]");
  }
}

std::size_t DyadicSpace::block_size(int k) const {
  if (k < 0 || k > levels) throw std::out_of_range("filtration level out of range");
  return std::size_t{1} << (levels - k);
}

std::size_t DyadicSpace::block_count(int k) const {
  if (k < 0 || k > levels) throw std::out_of_range("filtration level out of range");
  return std::size_t{1} << k;
}

DyadicSpace DyadicSpace::from_size(std::size_t size) {
  if (size == 0 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("sample vector length must be a power of two");
  }
  int levels = 0;
  while ((std::size_t{1} << levels) < size) ++levels;
  return DyadicSpace(levels);
}

SampleVector::SampleVector(DyadicSpace s, ComplexVector v)
    : space(s), values(std::move(v)) {
  if (values.size() != space.atom_count()) {
    throw std::invalid_argument("sample vector length does not match space");
  }
}

SampleVector SampleVector::zero(DyadicSpace s) {
  return SampleVector(s, ComplexVector(s.atom_count(), Complex{0.0, 0.0}));
}

SampleVector SampleVector::constant(DyadicSpace s, Complex c) {
  return SampleVector(s, ComplexVector(s.atom_count(), c));
}

double SampleVector::norm_p(double p) const {
  if (!(p > 0.0)) throw std::invalid_argument("norm exponent must be positive");
  const double weight = 1.0 / static_cast<double>(space.atom_count());
  double acc = 0.0;
  for (const Complex& v : values) acc += std::pow(std::abs(v), p);
  return std::pow(weight * acc, 1.0 / p);
}

double SampleVector::norm_inf() const {
  double m = 0.0;
  for (const Complex& v : values) m = std::max(m, std::abs(v));
  return m;
}

Complex inner_product(const SampleVector& f, const SampleVector& g) {
  if (f.space != g.space) throw std::invalid_argument("sample vectors live on different spaces");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    acc += f.values[i] * std::conj(g.values[i]);
  }
  return acc / static_cast<double>(f.space.atom_count());
}

SampleVector conditional_expectation(const SampleVector& f, int k) {
  const std::size_t bs = f.space.block_size(k);
  SampleVector out = SampleVector::zero(f.space);
  const std::size_t n = f.values.size();
  for (std::size_t start = 0; start < n; start += bs) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = start; i < start + bs; ++i) acc += f.values[i];
    acc /= static_cast<double>(bs);
    for (std::size_t i = start; i < start + bs; ++i) out.values[i] = acc;
  }
  return out;
}

SampleVector martingale_difference(const SampleVector& f, int k) {
  if (k < 1 || k > f.space.levels) throw std::out_of_range("difference level out of range");
  // E_k f - E_{k-1} f computed in one pass over the level-(k-1) blocks.
  const std::size_t parent = f.space.block_size(k - 1);
  const std::size_t half = parent / 2;
  SampleVector out = SampleVector::zero(f.space);
  const std::size_t n = f.values.size();
  for (std::size_t start = 0; start < n; start += parent) {
    Complex left{0.0, 0.0};
    Complex right{0.0, 0.0};
    for (std::size_t i = start; i < start + half; ++i) left += f.values[i];
    for (std::size_t i = start + half; i < start + parent; ++i) right += f.values[i];
    const Complex delta = (left - right) / static_cast<double>(parent);
    for (std::size_t i = start; i < start + half; ++i) out.values[i] = delta;
    for (std::size_t i = start + half; i < start + parent; ++i) out.values[i] = -delta;
  }
  return out;
}

SampleVector martingale_synthesis(const SampleVector& level0,
                                  std::span<const SampleVector> diffs) {
  SampleVector out = level0;
  for (const SampleVector& d : diffs) {
    if (d.space != out.space) throw std::invalid_argument("synthesis parts live on different spaces");
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += d.values[i];
  }
  return out;
}

}  // namespace marcinlab
