// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#include "marcinlab/bilinear.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "marcinlab/fft.hpp"

namespace marcinlab {

Symbol Symbol::from_table(const PeriodicGrid& grid, ComplexVector table,
                          std::string description) {
  if (table.size() != static_cast<std::size_t>(grid.points) * grid.points) {
    throw std::invalid_argument("symbol table dimension mismatch");
  }
  Symbol s;
  s.is_table_ = true;
  s.grid_ = grid;
  s.table_ = std::move(table);
  s.description_ = std::move(description);
  return s;
}

Symbol Symbol::from_callable(std::function<Complex(double, double)> fn,
                             std::string description) {
  Symbol s;
  s.fn_ = std::move(fn);
  s.description_ = std::move(description);
  return s;
}

Symbol Symbol::constant(Complex c) {
  return from_callable([c](double, double) { return c; }, "constant");
}

const PeriodicGrid& Symbol::table_grid() const {
  if (!is_table_) throw std::logic_error("symbol is not table-backed");
  return *grid_;
}

Complex Symbol::eval_index(const PeriodicGrid& grid, int a, int b) const {
  if (is_table_) {
    if (!(grid == *grid_)) throw std::invalid_argument("symbol table dimension mismatch");
    return table_[static_cast<std::size_t>(a) * grid.points + b];
  }
  return fn_(grid.frequency(a), grid.frequency(b));
}

Complex Symbol::eval(double xi, double eta, bool* interpolated) const {
  if (!is_table_) return fn_(xi, eta);
  const PeriodicGrid& g = *grid_;
  auto index_of = [&g](double freq) {
    const double m = std::round(freq * g.period);
    const double half = g.points / 2;
    const double clamped = std::max(-half, std::min(half - 1, m));
    const int idx = static_cast<int>(clamped);
    return ((idx % g.points) + g.points) % g.points;
  };
  if (interpolated) *interpolated = true;
  return table_[static_cast<std::size_t>(index_of(xi)) * g.points + index_of(eta)];
}

double Symbol::sup_norm(const PeriodicGrid& grid) const {
  double m = 0.0;
  for (int a = 0; a < grid.points; ++a) {
    for (int b = 0; b < grid.points; ++b) {
      m = std::max(m, std::abs(eval_index(grid, a, b)));
    }
  }
  return m;
}

namespace {

void check_same_grid(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("grid functions live on different grids");
}

ComplexVector roots_of_unity(int m) {
  ComplexVector w(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double a = 2.0 * std::numbers::pi * i / m;
    w[static_cast<std::size_t>(i)] = Complex{std::cos(a), std::sin(a)};
  }
  return w;
}

}  // namespace

GridFunction apply_bilinear(const Symbol& sigma, const GridFunction& f, const GridFunction& g) {
  check_same_grid(f, g);
  const PeriodicGrid& grid = f.grid();
  const int m = grid.points;
  const ComplexVector& fc = f.coefficients();
  const ComplexVector& gc = g.coefficients();
  const ComplexVector w = roots_of_unity(m);
  ComplexVector out(static_cast<std::size_t>(m), Complex{0.0, 0.0});
  ComplexVector slice(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    const Complex fa = fc[static_cast<std::size_t>(a)];
    if (fa == Complex{0.0, 0.0}) continue;
    for (int b = 0; b < m; ++b) {
      slice[static_cast<std::size_t>(b)] = sigma.eval_index(grid, a, b) * gc[static_cast<std::size_t>(b)];
    }
    fft_backward(slice);  // sum_b slice_b exp(+2 pi i b x / m)
    for (int i = 0; i < m; ++i) {
      const std::size_t phase = static_cast<std::size_t>((static_cast<long long>(a) * i) % m);
      out[static_cast<std::size_t>(i)] += fa * w[phase] * slice[static_cast<std::size_t>(i)];
    }
  }
  return GridFunction(grid, std::move(out));
}

GridFunction apply_bilinear_reference(const Symbol& sigma, const GridFunction& f,
                                      const GridFunction& g) {
  check_same_grid(f, g);
  const PeriodicGrid& grid = f.grid();
  const int m = grid.points;
  if (m > 64) throw std::length_error("reference evaluator limited to grids of 64 points");
  const ComplexVector& fc = f.coefficients();
  const ComplexVector& gc = g.coefficients();
  const ComplexVector w = roots_of_unity(m);
  ComplexVector out(static_cast<std::size_t>(m), Complex{0.0, 0.0});
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const Complex c = sigma.eval_index(grid, a, b) * fc[static_cast<std::size_t>(a)] *
                        gc[static_cast<std::size_t>(b)];
      if (c == Complex{0.0, 0.0}) continue;
      for (int i = 0; i < m; ++i) {
        const std::size_t phase = static_cast<std::size_t>(
            (static_cast<long long>(a + b) % m) * i % m);
        out[static_cast<std::size_t>(i)] += c * w[phase];
      }
    }
  }
  return GridFunction(grid, std::move(out));
}

namespace {

// band_j h on coefficients already in hand.
GridFunction band_project(const PeriodicGrid& grid, const ComplexVector& coeffs, int band) {
  const BumpKit bumps;
  const double scale = std::pow(2.0, -band);
  ComplexVector windowed(coeffs.size());
  for (int m = 0; m < grid.points; ++m) {
    windowed[static_cast<std::size_t>(m)] =
        coeffs[static_cast<std::size_t>(m)] * bumps.phi_hat(scale * grid.frequency(m));
  }
  return GridFunction::from_coefficients(grid, std::move(windowed));
}

struct MatrixBandSpan {
  int row_low = 0, row_high = -1;
  int col_low = 0, col_high = -1;
};

MatrixBandSpan band_span(const Matrix& a) {
  MatrixBandSpan s;
  if (a.rows > 0) {
    s.row_low = a.row_index(0);
    s.row_high = a.row_index(a.rows - 1);
  }
  if (a.cols > 0) {
    s.col_low = a.col_index(0);
    s.col_high = a.col_index(a.cols - 1);
  }
  return s;
}

}  // namespace

GridFunction apply_bilinear_matrix(const Matrix& a, const GridFunction& f,
                                   const GridFunction& g) {
  check_same_grid(f, g);
  const PeriodicGrid& grid = f.grid();
  const MatrixBandSpan span = band_span(a);
  ComplexVector out(f.size(), Complex{0.0, 0.0});
  // Column combinations first: G_r = sum_c a_{rc} band_{k(c)} g.
  std::vector<GridFunction> col_bands;
  col_bands.reserve(static_cast<std::size_t>(a.cols));
  for (int c = 0; c < a.cols; ++c) {
    col_bands.push_back(band_project(grid, g.coefficients(), span.col_low + c));
  }
  for (int r = 0; r < a.rows; ++r) {
    bool any = false;
    for (int c = 0; c < a.cols; ++c) {
      if (a.at(r, c) != Complex{0.0, 0.0}) any = true;
    }
    if (!any) continue;
    GridFunction fr = band_project(grid, f.coefficients(), span.row_low + r);
    ComplexVector combo(f.size(), Complex{0.0, 0.0});
    for (int c = 0; c < a.cols; ++c) {
      const Complex coeff = a.at(r, c);
      if (coeff == Complex{0.0, 0.0}) continue;
      const ComplexVector& cb = col_bands[static_cast<std::size_t>(c)].values();
      for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += coeff * cb[i];
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += fr.values()[i] * combo[i];
  }
  return GridFunction(grid, std::move(out));
}

Symbol sigma_from_matrix(const Matrix& a, const PeriodicGrid& grid) {
  if (grid.points > 2048) {
    throw std::length_error("dense symbol tables limited to grids of 2048 points");
  }
  const int m = grid.points;
  const BumpKit bumps;
  const MatrixBandSpan span = band_span(a);
  bool truncated = false;
  const int max_band = grid.max_faithful_band();
  if (a.rows > 0 && (span.row_high > max_band)) truncated = true;
  if (a.cols > 0 && (span.col_high > max_band)) truncated = true;

  // Row and column window tables.
  std::vector<std::vector<double>> row_w(static_cast<std::size_t>(a.rows)),
      col_w(static_cast<std::size_t>(a.cols));
  for (int r = 0; r < a.rows; ++r) {
    auto& wv = row_w[static_cast<std::size_t>(r)];
    wv.resize(static_cast<std::size_t>(m));
    const double scale = std::pow(2.0, -(span.row_low + r));
    for (int i = 0; i < m; ++i) wv[static_cast<std::size_t>(i)] = bumps.phi_hat(scale * grid.frequency(i));
  }
  for (int c = 0; c < a.cols; ++c) {
    auto& wv = col_w[static_cast<std::size_t>(c)];
    wv.resize(static_cast<std::size_t>(m));
    const double scale = std::pow(2.0, -(span.col_low + c));
    for (int i = 0; i < m; ++i) wv[static_cast<std::size_t>(i)] = bumps.phi_hat(scale * grid.frequency(i));
  }

  ComplexVector table(static_cast<std::size_t>(m) * m, Complex{0.0, 0.0});
  // inner_b[r][b] = sum_c a_{rc} col_w[c][b]
  ComplexVector inner(static_cast<std::size_t>(m));
  for (int r = 0; r < a.rows; ++r) {
    std::fill(inner.begin(), inner.end(), Complex{0.0, 0.0});
    bool any = false;
    for (int c = 0; c < a.cols; ++c) {
      const Complex coeff = a.at(r, c);
      if (coeff == Complex{0.0, 0.0}) continue;
      any = true;
      const auto& wv = col_w[static_cast<std::size_t>(c)];
      for (int b = 0; b < m; ++b) inner[static_cast<std::size_t>(b)] += coeff * wv[static_cast<std::size_t>(b)];
    }
    if (!any) continue;
    const auto& rv = row_w[static_cast<std::size_t>(r)];
    for (int x = 0; x < m; ++x) {
      const double rw = rv[static_cast<std::size_t>(x)];
      if (rw == 0.0) continue;
      Complex* dst = table.data() + static_cast<std::size_t>(x) * m;
      for (int b = 0; b < m; ++b) dst[b] += rw * inner[static_cast<std::size_t>(b)];
    }
  }
  Symbol s = Symbol::from_table(grid, std::move(table), "elementary-matrix");
  s.set_band_truncated(truncated);
  return s;
}

BandRange paraproduct_band_range(const PeriodicGrid& grid) {
  BandRange r;
  r.low = 0;
  r.high = grid.max_faithful_band();
  return r;
}

namespace {

std::vector<GridFunction> all_band_projections(const GridFunction& f, const BandRange& range) {
  std::vector<GridFunction> bands;
  bands.reserve(static_cast<std::size_t>(range.high - range.low + 1));
  for (int j = range.low; j <= range.high; ++j) {
    bands.push_back(band_project(f.grid(), f.coefficients(), j));
  }
  return bands;
}

}  // namespace

GridFunction paraproduct(const GridFunction& f, const GridFunction& g, ParaproductSide side) {
  check_same_grid(f, g);
  const BandRange range = paraproduct_band_range(f.grid());
  const GridFunction& hi = side == ParaproductSide::lower ? f : g;
  const GridFunction& lo = side == ParaproductSide::lower ? g : f;
  std::vector<GridFunction> lo_bands = all_band_projections(lo, range);
  ComplexVector prefix(f.size(), Complex{0.0, 0.0});
  ComplexVector out(f.size(), Complex{0.0, 0.0});
  for (int j = range.low; j <= range.high; ++j) {
    if (j - 3 >= range.low) {
      const ComplexVector& v = lo_bands[static_cast<std::size_t>(j - 3 - range.low)].values();
      for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] += v[i];
      GridFunction hj = band_project(f.grid(), hi.coefficients(), j);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += hj.values()[i] * prefix[i];
    }
  }
  return GridFunction(f.grid(), std::move(out));
}

Symbol paraproduct_symbol(const PeriodicGrid& grid, ParaproductSide side) {
  const BandRange range = paraproduct_band_range(grid);
  const int m = grid.points;
  const BumpKit bumps;
  // Window per band, then tau(a, b) = sum_j w_j(a) prefix_{j-3}(b).
  std::vector<std::vector<double>> w(static_cast<std::size_t>(range.high - range.low + 1));
  for (int j = range.low; j <= range.high; ++j) {
    auto& wv = w[static_cast<std::size_t>(j - range.low)];
    wv.resize(static_cast<std::size_t>(m));
    const double scale = std::pow(2.0, -j);
    for (int i = 0; i < m; ++i) wv[static_cast<std::size_t>(i)] = bumps.phi_hat(scale * grid.frequency(i));
  }
  ComplexVector table(static_cast<std::size_t>(m) * m, Complex{0.0, 0.0});
  std::vector<double> prefix(static_cast<std::size_t>(m), 0.0);
  for (int j = range.low; j <= range.high; ++j) {
    if (j - 3 < range.low) continue;
    const auto& wl = w[static_cast<std::size_t>(j - 3 - range.low)];
    for (int i = 0; i < m; ++i) prefix[static_cast<std::size_t>(i)] += wl[static_cast<std::size_t>(i)];
    const auto& wh = w[static_cast<std::size_t>(j - range.low)];
    for (int a = 0; a < m; ++a) {
      const double ha = wh[static_cast<std::size_t>(a)];
      if (ha == 0.0) continue;
      Complex* dst = table.data() + static_cast<std::size_t>(a) * m;
      for (int b = 0; b < m; ++b) dst[b] += ha * prefix[static_cast<std::size_t>(b)];
    }
  }
  if (side == ParaproductSide::upper) {
    // tau_U(xi, eta) = tau_L(eta, xi)
    ComplexVector transposed(table.size());
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        transposed[static_cast<std::size_t>(a) * m + b] = table[static_cast<std::size_t>(b) * m + a];
      }
    }
    table = std::move(transposed);
  }
  return Symbol::from_table(grid, std::move(table),
                            side == ParaproductSide::lower ? "paraproduct-lower"
                                                           : "paraproduct-upper");
}

GridFunction paraproduct_diagonal(const GridFunction& f, const GridFunction& g) {
  check_same_grid(f, g);
  const BandRange range = paraproduct_band_range(f.grid());
  std::vector<GridFunction> fb = all_band_projections(f, range);
  std::vector<GridFunction> gb = all_band_projections(g, range);
  ComplexVector out(f.size(), Complex{0.0, 0.0});
  for (int j = range.low; j <= range.high; ++j) {
    for (int k = std::max(range.low, j - 2); k <= std::min(range.high, j + 2); ++k) {
      const ComplexVector& a = fb[static_cast<std::size_t>(j - range.low)].values();
      const ComplexVector& b = gb[static_cast<std::size_t>(k - range.low)].values();
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += a[i] * b[i];
    }
  }
  return GridFunction(f.grid(), std::move(out));
}

GridFunction paraproduct_summand(const GridFunction& f, const GridFunction& g, int band) {
  check_same_grid(f, g);
  const BandRange range = paraproduct_band_range(f.grid());
  GridFunction fj = band_project(f.grid(), f.coefficients(), band);
  ComplexVector low(f.size(), Complex{0.0, 0.0});
  for (int k = range.low; k <= band - 3; ++k) {
    GridFunction gk = band_project(f.grid(), g.coefficients(), k);
    for (std::size_t i = 0; i < low.size(); ++i) low[i] += gk.values()[i];
  }
  ComplexVector out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fj.values()[i] * low[i];
  return GridFunction(f.grid(), std::move(out));
}

}  // namespace marcinlab
