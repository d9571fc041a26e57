// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#include "marcinlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "marcinlab/fft.hpp"
#include "marcinlab/rng.hpp"

namespace marcinlab {

PeriodicGrid::PeriodicGrid(int points_in, double period_in, int dimension_in)
    : dimension(dimension_in), points(points_in), period(period_in) {
  if (dimension_in != 1) {
    throw std::invalid_argument("this build is one-dimensional (dimension must be 1)");
  }
  if (points_in < 2 || (points_in & (points_in - 1)) != 0) {
    throw std::invalid_argument("grid points must be a power of two >= 2");
  }
  if (!(period_in > 0.0)) throw std::invalid_argument("period must be positive");
}

int PeriodicGrid::level_count() const {
  int l = 0;
  while ((1 << l) < points) ++l;
  return l;
}

int PeriodicGrid::frequency_index(int storage_index) const {
  return storage_index < points / 2 ? storage_index : storage_index - points;
}

int PeriodicGrid::max_faithful_band() const {
  const double nyquist = static_cast<double>(points) / (2.0 * period);
  int j = -40;
  while (std::pow(2.0, j + 2) <= nyquist) ++j;
  return j;  // largest j with 2^(j+1) <= nyquist
}

GridFunction::GridFunction(PeriodicGrid grid, ComplexVector values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid_.points)) {
    throw std::invalid_argument("grid function length does not match grid");
  }
}

GridFunction GridFunction::zero(const PeriodicGrid& grid) {
  return GridFunction(grid, ComplexVector(static_cast<std::size_t>(grid.points)));
}

GridFunction GridFunction::from_coefficients(const PeriodicGrid& grid, ComplexVector coeffs) {
  if (coeffs.size() != static_cast<std::size_t>(grid.points)) {
    throw std::invalid_argument("coefficient length does not match grid");
  }
  ComplexVector vals = coeffs;
  fft_backward(vals);
  GridFunction f(grid, std::move(vals));
  f.coeffs_cache_ = std::move(coeffs);
  f.coeffs_valid_ = true;
  return f;
}

GridFunction GridFunction::wave(const PeriodicGrid& grid, int frequency) {
  ComplexVector coeffs(static_cast<std::size_t>(grid.points), Complex{0.0, 0.0});
  const int m = ((frequency % grid.points) + grid.points) % grid.points;
  coeffs[static_cast<std::size_t>(m)] = Complex{1.0, 0.0};
  return from_coefficients(grid, std::move(coeffs));
}

const ComplexVector& GridFunction::coefficients() const {
  if (!coeffs_valid_) {
    coeffs_cache_ = values_;
    fft_forward(coeffs_cache_);
    const double inv = 1.0 / static_cast<double>(grid_.points);
    for (Complex& c : coeffs_cache_) c *= inv;
    coeffs_valid_ = true;
  }
  return coeffs_cache_;
}

double GridFunction::norm_p(double p) const {
  if (!(p > 0.0)) throw std::invalid_argument("norm exponent must be positive");
  const double weight = grid_.period / static_cast<double>(grid_.points);
  double acc = 0.0;
  for (const Complex& v : values_) acc += std::pow(std::abs(v), p);
  return std::pow(weight * acc, 1.0 / p);
}

double GridFunction::norm_inf() const {
  double m = 0.0;
  for (const Complex& v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction GridFunction::shifted(int offset) const {
  const int m = grid_.points;
  ComplexVector out(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    out[static_cast<std::size_t>(i)] = values_[static_cast<std::size_t>(((i - offset) % m + m) % m)];
  }
  return GridFunction(grid_, std::move(out));
}

GridFunction GridFunction::dilated_half() const {
  const int m = grid_.points;
  ComplexVector out(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    out[static_cast<std::size_t>(i)] = values_[static_cast<std::size_t>((2 * i) % m)];
  }
  return GridFunction(grid_, std::move(out));
}

Complex grid_inner_product(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("grid functions live on different grids");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < f.size(); ++i) acc += f.values()[i] * std::conj(g.values()[i]);
  return acc * (f.grid().period / static_cast<double>(f.grid().points));
}

namespace {

double smooth_step_piece(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double BumpKit::psi_hat(double x) const {
  const double r = std::abs(x);
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double a = smooth_step_piece(2.0 - r);
  const double b = smooth_step_piece(r - 1.0);
  return a / (a + b);
}

double BumpKit::phi_hat(double x) const { return psi_hat(x) - psi_hat(2.0 * x); }

double BumpKit::zeta_hat(double x) const {
  return phi_hat(4.0 * x) + phi_hat(8.0 * x) + phi_hat(16.0 * x);
}

BumpKit make_bumps() { return BumpKit{}; }

namespace {

// Frequency-side window application shared by the filters.
ComplexVector windowed_coefficients(const GridFunction& f, int band, LpVariant variant) {
  const BumpKit bumps;
  const PeriodicGrid& grid = f.grid();
  const double scale = std::pow(2.0, -band);
  ComplexVector coeffs = f.coefficients();
  for (int m = 0; m < grid.points; ++m) {
    const double xi = grid.frequency(m);
    const double w = variant == LpVariant::delta ? bumps.phi_hat(scale * xi)
                                                 : bumps.psi_hat(scale * xi);
    coeffs[static_cast<std::size_t>(m)] *= w;
  }
  return coeffs;
}

void cell_expectation_raw(const ComplexVector& in, int cells, ComplexVector& out) {
  const std::size_t n = in.size();
  const std::size_t bs = n / static_cast<std::size_t>(cells);
  out.resize(n);
  for (std::size_t start = 0; start < n; start += bs) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = start; i < start + bs; ++i) acc += in[i];
    acc /= static_cast<double>(bs);
    for (std::size_t i = start; i < start + bs; ++i) out[i] = acc;
  }
}

void cell_difference_raw(const ComplexVector& in, int level, ComplexVector& out) {
  // E_level - E_{level-1} in one pass over the coarser cells.
  const std::size_t n = in.size();
  const std::size_t parent = n >> (level - 1);
  const std::size_t half = parent / 2;
  out.resize(n);
  for (std::size_t start = 0; start < n; start += parent) {
    Complex left{0.0, 0.0};
    Complex right{0.0, 0.0};
    for (std::size_t i = start; i < start + half; ++i) left += in[i];
    for (std::size_t i = start + half; i < start + parent; ++i) right += in[i];
    const Complex delta = (left - right) / static_cast<double>(parent);
    for (std::size_t i = start; i < start + half; ++i) out[i] = delta;
    for (std::size_t i = start + half; i < start + parent; ++i) out[i] = -delta;
  }
}

}  // namespace

FilteredFunction lp_project(const GridFunction& f, int band, LpVariant variant) {
  FilteredFunction out;
  out.value = GridFunction::from_coefficients(f.grid(), windowed_coefficients(f, band, variant));
  out.in_band = band <= f.grid().max_faithful_band();
  return out;
}

GridFunction grid_mart_diff(const GridFunction& f, int level, MartVariant variant) {
  const int max_level = f.grid().level_count();
  ComplexVector out;
  if (variant == MartVariant::expectation) {
    if (level < 0 || level > max_level) throw std::invalid_argument("cell level out of range");
    cell_expectation_raw(f.values(), 1 << level, out);
  } else {
    if (level < 1 || level > max_level) throw std::invalid_argument("difference level out of range");
    cell_difference_raw(f.values(), level, out);
  }
  return GridFunction(f.grid(), std::move(out));
}

namespace {

// Raw-buffer pipeline used by the power iterations: all operators here are
// self-adjoint, so T* is the reversed composition.
class CrossOperator {
 public:
  CrossOperator(const PeriodicGrid& grid, std::vector<std::pair<int, int>> terms,
                bool swapped = false)
      : grid_(grid), terms_(std::move(terms)), swapped_(swapped) {}

  // terms: (mart_level, band); T f = sum_terms D_level lp_band f, or the
  // reversed composition when constructed swapped.
  void apply(const ComplexVector& in, ComplexVector& out, bool adjoint_in) const {
    const bool adjoint = adjoint_in != swapped_;
    const std::size_t n = in.size();
    out.assign(n, Complex{0.0, 0.0});
    ComplexVector freq = in;
    ComplexVector scratch, freq_term;
    const BumpKit bumps;
    if (!adjoint) {
      fft_forward(freq);
      for (const auto& [level, band] : terms_) {
        freq_term = freq;
        const double scale = std::pow(2.0, -band);
        for (int m = 0; m < grid_.points; ++m) {
          freq_term[static_cast<std::size_t>(m)] *= bumps.phi_hat(scale * grid_.frequency(m));
        }
        fft_backward(freq_term);
        const double inv = 1.0 / static_cast<double>(grid_.points);
        for (Complex& v : freq_term) v *= inv;
        cell_difference_raw(freq_term, level, scratch);
        for (std::size_t i = 0; i < n; ++i) out[i] += scratch[i];
      }
    } else {
      // sum_terms lp_band D_level f: difference first, then filter.
      for (const auto& [level, band] : terms_) {
        cell_difference_raw(in, level, scratch);
        fft_forward(scratch);
        const double scale = std::pow(2.0, -band);
        for (int m = 0; m < grid_.points; ++m) {
          scratch[static_cast<std::size_t>(m)] *= bumps.phi_hat(scale * grid_.frequency(m));
        }
        fft_backward(scratch);
        const double inv = 1.0 / static_cast<double>(grid_.points);
        for (std::size_t i = 0; i < n; ++i) out[i] += scratch[i] * inv;
      }
    }
  }

 private:
  PeriodicGrid grid_;
  std::vector<std::pair<int, int>> terms_;
  bool swapped_ = false;
};

OperatorNormResult operator_power_iteration(const CrossOperator& op, std::size_t n,
                                            const PowerIterationOptions& opts) {
  OperatorNormResult res;
  Rng rng(opts.seed);
  ComplexVector v(n);
  for (Complex& x : v) x = rng.normal_complex();
  double nv = 0.0;
  for (const Complex& x : v) nv += std::norm(x);
  nv = std::sqrt(nv);
  for (Complex& x : v) x /= nv;

  ComplexVector w, u;
  double prev = -1.0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    op.apply(v, w, false);
    double nw = 0.0;
    for (const Complex& x : w) nw += std::norm(x);
    nw = std::sqrt(nw);
    res.iterations = it + 1;
    res.value = nw;  // ||T v|| with ||v|| = 1
    if (nw == 0.0) {
      res.converged = true;
      break;
    }
    if (prev >= 0.0 && std::abs(nw - prev) <= opts.tolerance * std::max(1.0, nw)) {
      res.converged = true;
      break;
    }
    prev = nw;
    op.apply(w, u, true);
    double nu = 0.0;
    for (const Complex& x : u) nu += std::norm(x);
    nu = std::sqrt(nu);
    if (nu == 0.0) {
      res.converged = true;
      break;
    }
    for (Complex& x : u) x /= nu;
    v = std::move(u);
  }
  return res;
}

}  // namespace

OperatorNormResult cross_norm_mart_lp(const PeriodicGrid& grid, int mart_level, int band,
                                      const PowerIterationOptions& opts) {
  if (mart_level < 1 || mart_level > grid.level_count()) {
    throw std::invalid_argument("martingale level out of range");
  }
  CrossOperator op(grid, {{mart_level, band}});
  return operator_power_iteration(op, static_cast<std::size_t>(grid.points), opts);
}

OperatorNormResult cross_norm_vr(const PeriodicGrid& grid, int shift, bool adjoint,
                                 const PowerIterationOptions& opts) {
  std::vector<std::pair<int, int>> terms;
  const int max_band = grid.max_faithful_band();
  // Cell level j+1 pairs with band j: the aligned sum (shift 0) acts as a
  // bounded perturbation of the identity on band-limited inputs.
  for (int level = 1; level <= grid.level_count(); ++level) {
    const int band = level - 1 + shift;
    if (band < 0 || band > max_band) continue;
    terms.emplace_back(level, band);
  }
  if (terms.empty()) return OperatorNormResult{0.0, 0, true};
  CrossOperator op(grid, std::move(terms), adjoint);
  return operator_power_iteration(op, static_cast<std::size_t>(grid.points), opts);
}

}  // namespace marcinlab
