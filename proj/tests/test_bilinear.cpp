// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "marcinlab/bilinear.hpp"
#include "marcinlab/counterexamples.hpp"
#include "marcinlab/rng.hpp"

using namespace marcinlab;

namespace {

GridFunction random_function(const PeriodicGrid& grid, std::uint64_t seed) {
  Rng rng(seed);
  ComplexVector v(static_cast<std::size_t>(grid.points));
  for (Complex& x : v) x = rng.normal_complex();
  return GridFunction(grid, std::move(v));
}

// random function whose spectrum sits inside the faithful bands
GridFunction random_band_limited(const PeriodicGrid& grid, std::uint64_t seed, int low_band,
                                 int high_band) {
  Rng rng(seed);
  const BumpKit bumps;
  ComplexVector coeffs(static_cast<std::size_t>(grid.points), Complex{0.0, 0.0});
  for (int m = 0; m < grid.points; ++m) {
    const double xi = std::abs(grid.frequency(m));
    double weight = 0.0;
    for (int j = low_band; j <= high_band; ++j) {
      weight += bumps.phi_hat(std::pow(2.0, -j) * xi);
    }
    if (weight >= 1.0 - 1e-12) coeffs[static_cast<std::size_t>(m)] = rng.normal_complex();
  }
  return GridFunction::from_coefficients(grid, std::move(coeffs));
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("unit symbol multiplies pointwise") {
  const PeriodicGrid g(256);
  const GridFunction f = random_function(g, 1);
  const GridFunction h = random_function(g, 2);
  const GridFunction w = apply_bilinear(Symbol::constant(Complex{1.0, 0.0}), f, h);
  ComplexVector prod(f.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = f.values()[i] * h.values()[i];
  CHECK(max_abs_diff(w, GridFunction(g, std::move(prod))) <= 1e-10);

  const GridFunction z = GridFunction::zero(g);
  CHECK(apply_bilinear(Symbol::constant(Complex{1.0, 0.0}), z, h).norm_inf() == 0.0);
}

TEST_CASE("separable symbols factor into linear multipliers") {
  const PeriodicGrid g(128);
  const BumpKit bumps;
  auto a_fn = [&bumps](double xi) { return Complex{bumps.psi_hat(xi / 8.0), 0.0}; };
  auto b_fn = [](double eta) {
    return Complex{1.0 / (1.0 + eta * eta), eta / (1.0 + std::abs(eta))};
  };
  const Symbol sep = Symbol::from_callable(
      [a_fn, b_fn](double xi, double eta) { return a_fn(xi) * b_fn(eta); }, "separable");
  const GridFunction f = random_function(g, 5);
  const GridFunction h = random_function(g, 6);
  const GridFunction w = apply_bilinear(sep, f, h);

  // oracle: apply the two linear multipliers then multiply pointwise
  ComplexVector fc = f.coefficients();
  ComplexVector hc = h.coefficients();
  for (int m = 0; m < g.points; ++m) {
    fc[static_cast<std::size_t>(m)] *= a_fn(g.frequency(m));
    hc[static_cast<std::size_t>(m)] *= b_fn(g.frequency(m));
  }
  const GridFunction mf = GridFunction::from_coefficients(g, std::move(fc));
  const GridFunction mh = GridFunction::from_coefficients(g, std::move(hc));
  ComplexVector prod(f.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = mf.values()[i] * mh.values()[i];
  CHECK(max_abs_diff(w, GridFunction(g, std::move(prod))) <= 1e-10);
}

TEST_CASE("sweep agrees with the cubic reference") {
  const PeriodicGrid g(64);
  Rng rng(7);
  const Symbol sym = Symbol::from_callable(
      [](double xi, double eta) {
        return Complex{std::cos(0.1 * xi) / (1.0 + std::abs(eta)),
                       std::sin(0.05 * xi * eta) * 0.2};
      },
      "generic");
  const GridFunction f = random_function(g, 8);
  const GridFunction h = random_function(g, 9);
  const GridFunction fast = apply_bilinear(sym, f, h);
  const GridFunction slow = apply_bilinear_reference(sym, f, h);
  CHECK(max_abs_diff(fast, slow) <= 1e-10 * std::max(1.0, slow.norm_inf()));

  const PeriodicGrid big(128);
  CHECK_THROWS_AS(
      apply_bilinear_reference(sym, random_function(big, 1), random_function(big, 2)),
      std::length_error);
}

TEST_CASE("elementary matrix path matches the dense table") {
  const PeriodicGrid g(128);
  Rng rng(11);
  Matrix a(3, 2, 1, 0);  // rows at bands 2..4, columns at 1..2
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 2; ++c) a.at(r, c) = rng.normal_complex();
  }
  const Symbol table = sigma_from_matrix(a, g);
  CHECK_FALSE(table.band_truncated());
  const GridFunction f = random_function(g, 12);
  const GridFunction h = random_function(g, 13);
  const GridFunction via_table = apply_bilinear(table, f, h);
  const GridFunction via_bands = apply_bilinear_matrix(a, f, h);
  CHECK(max_abs_diff(via_table, via_bands) <= 1e-10 * std::max(1.0, via_table.norm_inf()));

  // sup norm envelope: at most two bumps overlap per axis
  CHECK(table.sup_norm(g) <= 4.0 * a.sup_norm() + 1e-12);

  // a row band beyond the grid flags truncation
  Matrix wide(9, 1, 0, 0);
  wide.at(8, 0) = Complex{1.0, 0.0};
  CHECK(sigma_from_matrix(wide, g).band_truncated());
}

TEST_CASE("translation covariance and dyadic dilation") {
  const PeriodicGrid g(128);
  Matrix a(2, 2, 1, 1);  // bands 2..3
  a.at(0, 0) = Complex{1.0, 0.0};
  a.at(1, 1) = Complex{0.5, -0.5};
  const GridFunction f = random_band_limited(g, 14, 2, 3);
  const GridFunction h = random_band_limited(g, 15, 2, 3);
  const GridFunction w = apply_bilinear_matrix(a, f, h);

  // cyclic translation of both inputs translates the output exactly
  const GridFunction wt = apply_bilinear_matrix(a, f.shifted(17), h.shifted(17));
  CHECK(max_abs_diff(wt, w.shifted(17)) <= 1e-10 * std::max(1.0, w.norm_inf()));

  // shifting the matrix up one dyadic scale matches the exact 2x dilation:
  // doubling every input frequency turns the output into its samples at 2x
  const Matrix a_up = translate(a, -1, -1);  // entries now at bands 3..4
  ComplexVector fc(static_cast<std::size_t>(g.points), Complex{0.0, 0.0});
  ComplexVector hc(static_cast<std::size_t>(g.points), Complex{0.0, 0.0});
  const ComplexVector& fcoef = f.coefficients();
  const ComplexVector& hcoef = h.coefficients();
  for (int m = 0; m < g.points; ++m) {
    const int xi = g.frequency_index(m);
    const int idx = (((2 * xi) % g.points) + g.points) % g.points;
    if (fcoef[static_cast<std::size_t>(m)] != Complex{0.0, 0.0}) {
      fc[static_cast<std::size_t>(idx)] = fcoef[static_cast<std::size_t>(m)];
    }
    if (hcoef[static_cast<std::size_t>(m)] != Complex{0.0, 0.0}) {
      hc[static_cast<std::size_t>(idx)] = hcoef[static_cast<std::size_t>(m)];
    }
  }
  const GridFunction f_double = GridFunction::from_coefficients(g, std::move(fc));
  const GridFunction h_double = GridFunction::from_coefficients(g, std::move(hc));
  const GridFunction w_up = apply_bilinear_matrix(a_up, f_double, h_double);
  // w_up(x) should equal w(2x) sample for sample
  double worst = 0.0;
  for (int i = 0; i < g.points; ++i) {
    const int di = (2 * i) % g.points;
    worst = std::max(worst, std::abs(w_up.values()[static_cast<std::size_t>(i)] -
                                     w.values()[static_cast<std::size_t>(di)]));
  }
  CHECK(worst <= 1e-9 * std::max(1.0, w.norm_inf()));
}

TEST_CASE("paraproduct paths agree and split the product") {
  const PeriodicGrid g(256);
  const GridFunction f = random_band_limited(g, 31, 1, 5);
  const GridFunction h = random_band_limited(g, 32, 1, 5);

  const GridFunction lower = paraproduct(f, h, ParaproductSide::lower);
  const GridFunction lower_via_symbol =
      apply_bilinear(paraproduct_symbol(g, ParaproductSide::lower), f, h);
  CHECK(max_abs_diff(lower, lower_via_symbol) <= 1e-10 * std::max(1.0, lower.norm_inf()));

  const GridFunction upper = paraproduct(f, h, ParaproductSide::upper);
  const GridFunction upper_via_symbol =
      apply_bilinear(paraproduct_symbol(g, ParaproductSide::upper), f, h);
  CHECK(max_abs_diff(upper, upper_via_symbol) <= 1e-10 * std::max(1.0, upper.norm_inf()));

  // constant low-frequency input has no band content: lower paraproduct dies
  const GridFunction c = GridFunction(g, ComplexVector(256, Complex{3.0, 1.0}));
  CHECK(paraproduct(f, c, ParaproductSide::lower).norm_inf() <= 1e-12);

  // the two paraproducts plus the near-diagonal part give back the product
  const GridFunction diag = paraproduct_diagonal(f, h);
  ComplexVector sum(f.size());
  for (std::size_t i = 0; i < sum.size(); ++i) {
    sum[i] = lower.values()[i] + upper.values()[i] + diag.values()[i] -
             f.values()[i] * h.values()[i];
  }
  double worst = 0.0;
  for (const Complex& v : sum) worst = std::max(worst, std::abs(v));
  CHECK(worst <= 1e-10 * std::max(1.0, f.norm_inf() * h.norm_inf()));
}

TEST_CASE("paraproduct summands live in the annulus") {
  const PeriodicGrid g(256);
  const GridFunction f = random_band_limited(g, 41, 1, 5);
  const GridFunction h = random_band_limited(g, 42, 1, 5);
  const BumpKit bumps;
  for (int j = 3; j <= 5; ++j) {
    const GridFunction s = paraproduct_summand(f, h, j);
    // exact combinatorial support check: every nonzero coefficient pair
    // (xi in band j, eta below) sums into [2^(j-2), 2^(j+2)]
    const ComplexVector& fc = f.coefficients();
    const ComplexVector& hc = h.coefficients();
    for (int ma = 0; ma < g.points; ++ma) {
      const double xi = g.frequency(ma);
      if (bumps.phi_hat(std::pow(2.0, -j) * xi) == 0.0) continue;
      if (fc[static_cast<std::size_t>(ma)] == Complex{0.0, 0.0}) continue;
      for (int mb = 0; mb < g.points; ++mb) {
        const double eta = g.frequency(mb);
        double low_weight = 0.0;
        for (int k = 0; k <= j - 3; ++k) low_weight += bumps.phi_hat(std::pow(2.0, -k) * eta);
        if (low_weight == 0.0) continue;
        if (hc[static_cast<std::size_t>(mb)] == Complex{0.0, 0.0}) continue;
        const double zeta = std::abs(xi + eta);
        CHECK(zeta >= std::pow(2.0, j - 2));
        CHECK(zeta <= std::pow(2.0, j + 2));
      }
    }
    // and the numerical spectrum indeed vanishes off the annulus
    const ComplexVector& sc = s.coefficients();
    const double top = s.norm_inf();
    for (int m = 0; m < g.points; ++m) {
      const double z = std::abs(g.frequency(m));
      if (z < std::pow(2.0, j - 2) - 1e-9 || z > std::pow(2.0, j + 2) + 1e-9) {
        CHECK(std::abs(sc[static_cast<std::size_t>(m)]) <= 1e-12 * std::max(1.0, top));
      }
    }
  }
}

TEST_CASE("bilinear shape errors") {
  const PeriodicGrid g1(64);
  const PeriodicGrid g2(128);
  const GridFunction f = random_function(g1, 1);
  const GridFunction h = random_function(g2, 2);
  const Symbol one = Symbol::constant(Complex{1.0, 0.0});
  CHECK_THROWS_AS(apply_bilinear(one, f, h), std::invalid_argument);

  Matrix a(1, 1);
  a.at(0, 0) = Complex{1.0, 0.0};
  const Symbol table = sigma_from_matrix(a, g1);
  const GridFunction h2 = random_function(g2, 3);
  const GridFunction f2 = random_function(g2, 4);
  CHECK_THROWS_AS(apply_bilinear(table, f2, h2), std::invalid_argument);

  const PeriodicGrid huge(4096);
  CHECK_THROWS_AS(sigma_from_matrix(a, huge), std::length_error);
}
