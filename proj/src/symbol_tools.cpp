// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#include "marcinlab/symbol_tools.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "marcinlab/counterexamples.hpp"
#include "marcinlab/fft.hpp"
#include "marcinlab/lorentz.hpp"
#include "marcinlab/rng.hpp"

namespace marcinlab {

namespace {

constexpr double kPhaseEpsilon = 1e-12;

double pow2(int e) { return std::pow(2.0, e); }

}  // namespace

Symbol symbol_breakup(const Symbol& sigma, int j, int k) {
  const BumpKit bumps;
  const double sj = pow2(-j);
  const double sk = pow2(-k);
  Symbol copy = sigma;
  return Symbol::from_callable(
      [copy, bumps, sj, sk](double xi, double eta) {
        const double w = bumps.phi_hat(sj * xi) * bumps.phi_hat(sk * eta);
        if (w == 0.0) return Complex{0.0, 0.0};
        return copy.eval(xi, eta) * w;
      },
      "breakup(" + sigma.description() + ")");
}

const CoefficientBlock* CoefficientTable::find(int j, int k) const {
  for (const CoefficientBlock& b : blocks) {
    if (b.j == j && b.k == k) return &b;
  }
  return nullptr;
}

Complex CoefficientTable::at(int j, int k, int nu, int rho) const {
  const CoefficientBlock* b = find(j, k);
  if (!b) throw std::out_of_range("coefficient block missing");
  if (std::abs(nu) > cutoff || std::abs(rho) > cutoff) {
    throw std::out_of_range("lattice index beyond cutoff");
  }
  const int side = 2 * cutoff + 1;
  return b->coeffs[static_cast<std::size_t>((nu + cutoff) * side + (rho + cutoff))];
}

ComplexVector fourier_coefficient_block(const Symbol& sigma, int j, int k, int cutoff,
                                        int quadrature) {
  if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
  if (quadrature < 4 || (quadrature & (quadrature - 1)) != 0) {
    throw std::invalid_argument("quadrature point count must be a power of two >= 4");
  }
  if (4 * cutoff > quadrature) {
    throw std::invalid_argument("cutoff exceeds quadrature/4: aliasing");
  }
  const BumpKit bumps;
  const int q = quadrature;
  // Samples of sigma(2^{j+3} t, 2^{k+3} s) phi_hat(8t) phi_hat(8s) on the
  // cell [-1/2, 1/2)^2.
  ComplexVector samples(static_cast<std::size_t>(q) * q, Complex{0.0, 0.0});
  const double xscale = pow2(j + 3);
  const double yscale = pow2(k + 3);
  std::vector<double> ts(static_cast<std::size_t>(q));
  std::vector<double> window(static_cast<std::size_t>(q));
  for (int a = 0; a < q; ++a) {
    ts[static_cast<std::size_t>(a)] = -0.5 + static_cast<double>(a) / q;
    window[static_cast<std::size_t>(a)] = bumps.phi_hat(8.0 * ts[static_cast<std::size_t>(a)]);
  }
  for (int a = 0; a < q; ++a) {
    const double wa = window[static_cast<std::size_t>(a)];
    if (wa == 0.0) continue;
    const double t = ts[static_cast<std::size_t>(a)];
    for (int b = 0; b < q; ++b) {
      const double wb = window[static_cast<std::size_t>(b)];
      if (wb == 0.0) continue;
      const double s = ts[static_cast<std::size_t>(b)];
      samples[static_cast<std::size_t>(a) * q + b] =
          sigma.eval(xscale * t, yscale * s) * (wa * wb);
    }
  }
  // Row-column FFT; the half-cell origin shift becomes the (-1)^(nu+rho) sign.
  ComplexVector line(static_cast<std::size_t>(q));
  for (int a = 0; a < q; ++a) {
    std::copy_n(samples.begin() + static_cast<std::ptrdiff_t>(a) * q, q, line.begin());
    fft_forward(line);
    std::copy_n(line.begin(), q, samples.begin() + static_cast<std::ptrdiff_t>(a) * q);
  }
  for (int b = 0; b < q; ++b) {
    for (int a = 0; a < q; ++a) line[static_cast<std::size_t>(a)] = samples[static_cast<std::size_t>(a) * q + b];
    fft_forward(line);
    for (int a = 0; a < q; ++a) samples[static_cast<std::size_t>(a) * q + b] = line[static_cast<std::size_t>(a)];
  }
  const int side = 2 * cutoff + 1;
  ComplexVector out(static_cast<std::size_t>(side) * side);
  const double norm = 1.0 / (static_cast<double>(q) * q);
  for (int nu = -cutoff; nu <= cutoff; ++nu) {
    for (int rho = -cutoff; rho <= cutoff; ++rho) {
      const int ia = ((nu % q) + q) % q;
      const int ib = ((rho % q) + q) % q;
      const double sign = ((nu + rho) % 2 == 0) ? 1.0 : -1.0;
      out[static_cast<std::size_t>((nu + cutoff) * side + (rho + cutoff))] =
          samples[static_cast<std::size_t>(ia) * q + ib] * (sign * norm);
    }
  }
  return out;
}

CoefficientTable fourier_coefficients(const Symbol& sigma, int j_low, int j_high, int k_low,
                                      int k_high, int cutoff, int quadrature) {
  if (j_low > j_high || k_low > k_high) throw std::invalid_argument("empty block range");
  CoefficientTable table;
  table.cutoff = cutoff;
  table.quadrature_points = quadrature;
  for (int j = j_low; j <= j_high; ++j) {
    for (int k = k_low; k <= k_high; ++k) {
      CoefficientBlock block;
      block.j = j;
      block.k = k;
      block.coeffs = fourier_coefficient_block(sigma, j, k, cutoff, quadrature);
      table.blocks.push_back(std::move(block));
    }
  }
  return table;
}

Complex resynthesize_value(const CoefficientTable& table, int cutoff, double xi, double eta) {
  if (cutoff > table.cutoff) throw std::invalid_argument("cutoff exceeds table cutoff");
  const BumpKit bumps;
  Complex acc{0.0, 0.0};
  const int side = 2 * table.cutoff + 1;
  for (int j = -40; j <= 40; ++j) {
    const double wj = bumps.zeta_hat(pow2(-j - 3) * xi);
    if (wj == 0.0) continue;
    for (int k = -40; k <= 40; ++k) {
      const double wk = bumps.zeta_hat(pow2(-k - 3) * eta);
      if (wk == 0.0) continue;
      const CoefficientBlock* block = table.find(j, k);
      if (!block) throw std::out_of_range("coefficient block missing for active window");
      const double t = pow2(-j - 3) * xi;
      const double s = pow2(-k - 3) * eta;
      Complex inner{0.0, 0.0};
      for (int nu = -cutoff; nu <= cutoff; ++nu) {
        const double at = 2.0 * std::numbers::pi * t * nu;
        const Complex ex{std::cos(at), std::sin(at)};
        for (int rho = -cutoff; rho <= cutoff; ++rho) {
          const double as = 2.0 * std::numbers::pi * s * rho;
          const Complex ey{std::cos(as), std::sin(as)};
          inner += block->coeffs[static_cast<std::size_t>((nu + table.cutoff) * side +
                                                          (rho + table.cutoff))] *
                   ex * ey;
        }
      }
      acc += inner * (wj * wk);
    }
  }
  return acc;
}

ResynthesisReport resynthesis_error(const Symbol& sigma, const CoefficientTable& table,
                                    int cutoff, int band_low, int band_high,
                                    int samples_per_band) {
  if (samples_per_band < 2) throw std::invalid_argument("need at least two samples per band");
  ResynthesisReport report;
  report.cutoff = cutoff;
  double worst = 0.0;
  int count = 0;
  for (int j = band_low; j <= band_high; ++j) {
    for (int k = band_low; k <= band_high; ++k) {
      for (int a = 0; a < samples_per_band; ++a) {
        const double u = 1.0 + static_cast<double>(a) / (samples_per_band - 1);
        for (int b = 0; b < samples_per_band; ++b) {
          const double v = 1.0 + static_cast<double>(b) / (samples_per_band - 1);
          for (double sx : {1.0, -1.0}) {
            for (double sy : {1.0, -1.0}) {
              const double xi = sx * u * pow2(j);
              const double eta = sy * v * pow2(k);
              const Complex approx = resynthesize_value(table, cutoff, xi, eta);
              const Complex exact = sigma.eval(xi, eta);
              worst = std::max(worst, std::abs(approx - exact));
              ++count;
            }
          }
        }
      }
    }
  }
  report.sup_error = worst;
  report.samples = count;
  return report;
}

namespace {

Complex finite_difference(const Symbol& sigma, double xi, double eta, int order, bool on_xi,
                          double rel_step) {
  const double base = on_xi ? xi : eta;
  const double h = rel_step * std::abs(base);
  auto value = [&](double offset) {
    return on_xi ? sigma.eval(xi + offset, eta) : sigma.eval(xi, eta + offset);
  };
  if (order == 1) return (value(h) - value(-h)) / (2.0 * h);
  if (order == 2) return (value(h) - 2.0 * value(0.0) + value(-h)) / (h * h);
  throw std::invalid_argument("finite differences support derivative orders 1 and 2 only");
}

}  // namespace

HNormReport h_norm_estimate(
    const Symbol& sigma, const HNormOptions& opts,
    const std::vector<std::function<Complex(double, double)>>& xi_derivatives,
    const std::vector<std::function<Complex(double, double)>>& eta_derivatives) {
  if (opts.scale_range < 0) throw std::invalid_argument("scale range must be nonnegative");
  if (opts.samples_per_axis < 1) throw std::invalid_argument("need at least one sample per axis");
  const int J = opts.scale_range;
  const int side = 2 * J + 1;
  HNormReport report;
  report.interpolated_table = sigma.is_table();
  report.xi_terms.assign(static_cast<std::size_t>(opts.derivative_order) + 1, 0.0);
  report.eta_terms.assign(static_cast<std::size_t>(opts.derivative_order) + 1, 0.0);

  auto term_value = [&](int order, bool on_xi) {
    double sup = 0.0;
    for (int ia = 0; ia < opts.samples_per_axis; ++ia) {
      const double u = opts.samples_per_axis == 1
                           ? 1.5
                           : 1.0 + static_cast<double>(ia) / (opts.samples_per_axis - 1);
      for (int ib = 0; ib < opts.samples_per_axis; ++ib) {
        const double v = opts.samples_per_axis == 1
                             ? 1.5
                             : 1.0 + static_cast<double>(ib) / (opts.samples_per_axis - 1);
        for (double sx : {1.0, -1.0}) {
          for (double sy : {1.0, -1.0}) {
            const double xi = sx * u;
            const double eta = sy * v;
            Matrix scales(side, side, -J - 1, -J - 1);
            for (int j = -J; j <= J; ++j) {
              for (int k = -J; k <= J; ++k) {
                const double x = pow2(j) * xi;
                const double y = pow2(k) * eta;
                Complex val;
                if (order == 0) {
                  val = sigma.eval(x, y);
                } else {
                  const auto& exact = on_xi ? xi_derivatives : eta_derivatives;
                  if (static_cast<int>(exact.size()) >= order && exact[order - 1]) {
                    val = exact[static_cast<std::size_t>(order - 1)](x, y);
                  } else {
                    val = finite_difference(sigma, x, y, order, on_xi, opts.fd_step_relative);
                  }
                  val *= std::pow(std::abs(on_xi ? x : y), order);
                }
                scales.at(j + J, k + J) = val;
              }
            }
            const HEstimate h = estimate_H(scales, opts.estimate);
            sup = std::max(sup, h.combined.lower_bound);
          }
        }
      }
    }
    return sup;
  };

  report.base_term = term_value(0, true);
  double total = 0.0;
  for (int order = 0; order <= opts.derivative_order; ++order) {
    const double tx = order == 0 ? report.base_term : term_value(order, true);
    const double te = order == 0 ? report.base_term : term_value(order, false);
    report.xi_terms[static_cast<std::size_t>(order)] = tx;
    report.eta_terms[static_cast<std::size_t>(order)] = te;
    total += tx + te;
  }
  report.value = total;
  return report;
}

SymbolFamily symbol_family_from_name(const std::string& name) {
  if (name == "plain") return SymbolFamily::plain_counterexample;
  if (name == "log") return SymbolFamily::log_theta;
  if (name == "loglog") return SymbolFamily::loglog;
  if (name == "strong-log") return SymbolFamily::strong_log;
  throw std::invalid_argument("unknown symbol family: " + name);
}

std::string symbol_family_name(SymbolFamily family) {
  switch (family) {
    case SymbolFamily::plain_counterexample: return "plain";
    case SymbolFamily::log_theta: return "log";
    case SymbolFamily::loglog: return "loglog";
    case SymbolFamily::strong_log: return "strong-log";
  }
  return "log";
}

namespace {

double smooth_blend(double t) {
  // 0 for t <= 0, 1 for t >= 1, C^inf monotone between.
  auto piece = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  const double a = piece(t);
  const double b = piece(1.0 - t);
  return a / (a + b);
}

// Smooth index guard: exactly 1 for t <= 1, exactly t for t >= 2.
double guarded_index(double t) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return t;
  const double chi = smooth_blend(t - 1.0);
  return (1.0 - chi) + chi * t;
}

double ratio_gap(double xi, double eta) {
  return std::abs(std::log2(std::abs(xi)) - std::log2(std::abs(eta)));
}

}  // namespace

Symbol marcinkiewicz_symbol(SymbolFamily family, double theta, int n,
                            const PeriodicGrid* grid) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
  switch (family) {
    case SymbolFamily::plain_counterexample: {
      if (!grid) throw std::invalid_argument("plain counterexample family needs a grid");
      Symbol s = sigma_from_matrix(sign_matrix(n, theta), *grid);
      return s;
    }
    case SymbolFamily::log_theta:
      return Symbol::from_callable(
          [theta](double xi, double eta) {
            if (xi == 0.0 || eta == 0.0) return Complex{0.0, 0.0};
            return Complex{log_weight_value(theta, guarded_index(ratio_gap(xi, eta))), 0.0};
          },
          "log-ratio-weight");
    case SymbolFamily::loglog:
      return Symbol::from_callable(
          [theta](double xi, double eta) {
            if (xi == 0.0 || eta == 0.0) return Complex{0.0, 0.0};
            return Complex{loglog_weight_value(theta, guarded_index(ratio_gap(xi, eta))), 0.0};
          },
          "loglog-ratio-weight");
    case SymbolFamily::strong_log:
      return Symbol::from_callable(
          [theta](double xi, double eta) {
            if (xi == 0.0 || eta == 0.0) return Complex{0.0, 0.0};
            return Complex{std::pow(1.0 + ratio_gap(xi, eta), -theta), 0.0};
          },
          "strong-log-weight");
  }
  throw std::invalid_argument("unknown symbol family");
}

namespace {

double lebesgue_norm_p(const ComplexVector& v, double p, double cell) {
  double acc = 0.0;
  for (const Complex& x : v) acc += std::pow(std::abs(x), p);
  return std::pow(cell * acc, 1.0 / p);
}

Complex dual_value(Complex v, double r) {
  const double m2 = std::norm(v) + kPhaseEpsilon;
  return std::pow(m2, 0.5 * (r - 2.0)) * v;
}

double weak_numerator(const ComplexVector& w, double p0, double cell, double* lambda_out) {
  std::vector<double> vals(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) vals[i] = std::abs(w[i]);
  std::sort(vals.begin(), vals.end(), std::greater<>());
  double best = 0.0;
  double lambda = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i + 1 < vals.size() && vals[i + 1] == vals[i]) continue;
    const double measure = cell * static_cast<double>(i + 1);
    const double obj = vals[i] * std::pow(measure, 1.0 / p0);
    if (obj > best) {
      best = obj;
      lambda = vals[i];
    }
  }
  if (lambda_out) *lambda_out = lambda;
  return best;
}

// Bilinear kernel abstraction: generic symbol sweep or matrix band path.
class BilinearKernel {
 public:
  BilinearKernel(const Symbol* sigma, const Matrix* matrix, const PeriodicGrid& grid)
      : sigma_(sigma), matrix_(matrix), grid_(grid) {}

  GridFunction apply(const GridFunction& f, const GridFunction& g) const {
    if (matrix_) return apply_bilinear_matrix(*matrix_, f, g);
    return apply_bilinear(*sigma_, f, g);
  }

  // Adjoint in the first input: returns Z with <W(f,g), h> = <f, Z>.
  GridFunction adjoint_first(const GridFunction& g, const GridFunction& h) const {
    if (matrix_) {
      const Matrix& a = *matrix_;
      ComplexVector out(h.size(), Complex{0.0, 0.0});
      const int col_low = a.cols > 0 ? a.col_index(0) : 0;
      const int row_low = a.rows > 0 ? a.row_index(0) : 0;
      std::vector<GridFunction> col_bands;
      col_bands.reserve(static_cast<std::size_t>(a.cols));
      for (int c = 0; c < a.cols; ++c) {
        FilteredFunction ff = lp_project(g, col_low + c, LpVariant::delta);
        col_bands.push_back(std::move(ff.value));
      }
      for (int r = 0; r < a.rows; ++r) {
        ComplexVector combo(h.size(), Complex{0.0, 0.0});
        bool any = false;
        for (int c = 0; c < a.cols; ++c) {
          const Complex coeff = a.at(r, c);
          if (coeff == Complex{0.0, 0.0}) continue;
          any = true;
          const ComplexVector& cb = col_bands[static_cast<std::size_t>(c)].values();
          for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += coeff * cb[i];
        }
        if (!any) continue;
        ComplexVector prod(h.size());
        for (std::size_t i = 0; i < prod.size(); ++i) {
          prod[i] = std::conj(combo[i]) * h.values()[i];
        }
        FilteredFunction back =
            lp_project(GridFunction(grid_, std::move(prod)), row_low + r, LpVariant::delta);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += back.value.values()[i];
      }
      return GridFunction(grid_, std::move(out));
    }
    // Coefficient-space adjoint: z_a = sum_b conj(sigma(a,b) g_b) h_{a+b}.
    const int m = grid_.points;
    const ComplexVector& gc = g.coefficients();
    const ComplexVector& hc = h.coefficients();
    ComplexVector z(static_cast<std::size_t>(m), Complex{0.0, 0.0});
    for (int a = 0; a < m; ++a) {
      Complex acc{0.0, 0.0};
      for (int b = 0; b < m; ++b) {
        const Complex sab = sigma_->eval_index(grid_, a, b);
        if (sab == Complex{0.0, 0.0}) continue;
        acc += std::conj(sab * gc[static_cast<std::size_t>(b)]) *
               hc[static_cast<std::size_t>((a + b) % m)];
      }
      z[static_cast<std::size_t>(a)] = acc;
    }
    return GridFunction::from_coefficients(grid_, std::move(z));
  }

  GridFunction adjoint_second(const GridFunction& f, const GridFunction& h) const {
    if (matrix_) {
      const Matrix& a = *matrix_;
      ComplexVector out(h.size(), Complex{0.0, 0.0});
      const int col_low = a.cols > 0 ? a.col_index(0) : 0;
      const int row_low = a.rows > 0 ? a.row_index(0) : 0;
      std::vector<GridFunction> row_bands;
      row_bands.reserve(static_cast<std::size_t>(a.rows));
      for (int r = 0; r < a.rows; ++r) {
        FilteredFunction ff = lp_project(f, row_low + r, LpVariant::delta);
        row_bands.push_back(std::move(ff.value));
      }
      for (int c = 0; c < a.cols; ++c) {
        ComplexVector combo(h.size(), Complex{0.0, 0.0});
        bool any = false;
        for (int r = 0; r < a.rows; ++r) {
          const Complex coeff = a.at(r, c);
          if (coeff == Complex{0.0, 0.0}) continue;
          any = true;
          const ComplexVector& rb = row_bands[static_cast<std::size_t>(r)].values();
          for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += coeff * rb[i];
        }
        if (!any) continue;
        ComplexVector prod(h.size());
        for (std::size_t i = 0; i < prod.size(); ++i) {
          prod[i] = std::conj(combo[i]) * h.values()[i];
        }
        FilteredFunction back =
            lp_project(GridFunction(grid_, std::move(prod)), col_low + c, LpVariant::delta);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += back.value.values()[i];
      }
      return GridFunction(grid_, std::move(out));
    }
    const int m = grid_.points;
    const ComplexVector& fc = f.coefficients();
    const ComplexVector& hc = h.coefficients();
    ComplexVector z(static_cast<std::size_t>(m), Complex{0.0, 0.0});
    for (int b = 0; b < m; ++b) {
      Complex acc{0.0, 0.0};
      for (int a = 0; a < m; ++a) {
        const Complex sab = sigma_->eval_index(grid_, a, b);
        if (sab == Complex{0.0, 0.0}) continue;
        acc += std::conj(sab * fc[static_cast<std::size_t>(a)]) *
               hc[static_cast<std::size_t>((a + b) % m)];
      }
      z[static_cast<std::size_t>(b)] = acc;
    }
    return GridFunction::from_coefficients(grid_, std::move(z));
  }

  // Band span hints for structured starts.
  std::pair<int, int> start_bands() const {
    if (matrix_) {
      const Matrix& a = *matrix_;
      const int jc = a.rows > 0 ? a.row_index(a.rows / 2) : 1;
      const int kc = a.cols > 0 ? a.col_index(a.cols / 2) : 1;
      return {jc, kc};
    }
    const int top = std::max(0, grid_.max_faithful_band() - 1);
    return {top, top};
  }

 private:
  const Symbol* sigma_;
  const Matrix* matrix_;
  PeriodicGrid grid_;
};

struct MultiplierObjective {
  double value = 0.0;
  double lambda = 0.0;
};

MultiplierObjective multiplier_objective(const BilinearKernel& kernel, const GridFunction& f,
                                         const GridFunction& g, double p1, double p2, double p0,
                                         bool weak) {
  MultiplierObjective obj;
  const double nf = f.norm_p(p1);
  const double ng = g.norm_p(p2);
  if (nf == 0.0 || ng == 0.0) return obj;
  const GridFunction w = kernel.apply(f, g);
  const double cell = w.grid().period / static_cast<double>(w.grid().points);
  if (weak) {
    obj.value = weak_numerator(w.values(), p0, cell, &obj.lambda) / (nf * ng);
  } else {
    obj.value = lebesgue_norm_p(w.values(), p0, cell) / (nf * ng);
  }
  return obj;
}

GridFunction multiplier_start(const BilinearKernel& kernel, const PeriodicGrid& grid,
                              int restart, bool first_input, std::uint64_t seed) {
  const auto [jc, kc] = kernel.start_bands();
  const int band = first_input ? jc : kc;
  if (restart == 0) {
    // Modulated pure wave at the band center.
    return GridFunction::wave(grid, static_cast<int>(pow2(std::min(band, grid.max_faithful_band()))));
  }
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(restart * 2 + (first_input ? 0 : 1))));
  if (restart == 1) {
    // Random-phase packet spread over the faithful bands.
    ComplexVector coeffs(static_cast<std::size_t>(grid.points), Complex{0.0, 0.0});
    const BumpKit bumps;
    for (int m = 0; m < grid.points; ++m) {
      const double xi = grid.frequency(m);
      double wsum = 0.0;
      for (int j = 0; j <= grid.max_faithful_band(); ++j) {
        wsum += bumps.phi_hat(pow2(-j) * xi);
      }
      if (wsum > 0.0) coeffs[static_cast<std::size_t>(m)] = rng.unit_phase() * wsum;
    }
    return GridFunction::from_coefficients(grid, std::move(coeffs));
  }
  ComplexVector vals(static_cast<std::size_t>(grid.points));
  for (Complex& v : vals) v = rng.normal_complex();
  return GridFunction(grid, std::move(vals));
}

BoundednessReport estimate_multiplier_impl(const Symbol* sigma, const Matrix* matrix,
                                           const PeriodicGrid& grid, double p1, double p2,
                                           bool weak, const MultiplierOptions& opts) {
  if (!(p1 > 0.0) || !(p2 > 0.0)) throw std::invalid_argument("exponents must be positive");
  BoundednessReport report;
  report.p1 = p1;
  report.p2 = p2;
  report.p0 = 1.0 / (1.0 / p1 + 1.0 / p2);
  report.mode = weak ? "weak" : "strong";
  report.grid_points = grid.points;
  report.grid_period = grid.period;
  report.seed = opts.seed;

  const double p0 = report.p0;
  BilinearKernel kernel(sigma, matrix, grid);
  const double p1star = p1 > 1.01 ? p1 / (p1 - 1.0) : 40.0;
  const double p2star = p2 > 1.01 ? p2 / (p2 - 1.0) : 40.0;

  double best = -1.0;
  GridFunction best_f, best_g;
  double best_lambda = 0.0;
  long long iterations = 0;
  bool converged = false;

  for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
    GridFunction f = multiplier_start(kernel, grid, restart, true, opts.seed);
    GridFunction g = multiplier_start(kernel, grid, restart, false, opts.seed);
    MultiplierObjective cur = multiplier_objective(kernel, f, g, p1, p2, p0, weak);
    double local_best = cur.value;
    GridFunction lf = f, lg = g;
    double llambda = cur.lambda;
    bool sweep_converged = false;
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      const bool update_f = (sweep % 2 == 0);
      const GridFunction& frozen = update_f ? g : f;
      GridFunction& moving = update_f ? f : g;
      const double pin = update_f ? p1 : p2;
      const double pstar = update_f ? p1star : p2star;
      for (int it = 0; it < opts.max_inner_iterations; ++it) {
        const GridFunction w =
            update_f ? kernel.apply(moving, frozen) : kernel.apply(frozen, moving);
        ComplexVector d(w.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = dual_value(w.values()[i], p0);
        const GridFunction dg(grid, std::move(d));
        GridFunction z = update_f ? kernel.adjoint_first(frozen, dg)
                                  : kernel.adjoint_second(frozen, dg);
        ComplexVector x(z.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = dual_value(z.values()[i], pstar);
        GridFunction candidate(grid, std::move(x));
        const double nx = candidate.norm_p(pin);
        ++iterations;
        if (nx == 0.0) break;
        ComplexVector scaled = candidate.values();
        for (Complex& v : scaled) v /= nx;
        moving = GridFunction(grid, std::move(scaled));
        MultiplierObjective next =
            multiplier_objective(kernel, f, g, p1, p2, p0, weak);
        if (next.value > local_best) {
          local_best = next.value;
          lf = f;
          lg = g;
          llambda = next.lambda;
        }
        if (std::abs(next.value - cur.value) <= opts.tolerance * std::max(1.0, next.value)) {
          cur = next;
          break;
        }
        cur = next;
      }
      if (sweep >= 2 && std::abs(cur.value - local_best) <=
                            opts.tolerance * std::max(1.0, local_best)) {
        sweep_converged = true;
        break;
      }
    }
    if (local_best > best) {
      best = local_best;
      best_f = lf;
      best_g = lg;
      best_lambda = llambda;
      converged = sweep_converged;
    }
  }

  report.certificate = std::max(0.0, best);
  report.witness_f = best_f.size() ? best_f.values() : ComplexVector{};
  report.witness_g = best_g.size() ? best_g.values() : ComplexVector{};
  if (weak) report.weak_threshold = best_lambda;
  report.iterations = iterations;
  report.converged = converged;
  return report;
}

}  // namespace

BoundednessReport estimate_multiplier_norm(const Symbol& sigma, const PeriodicGrid& grid,
                                           double p1, double p2, bool weak,
                                           const MultiplierOptions& opts) {
  return estimate_multiplier_impl(&sigma, nullptr, grid, p1, p2, weak, opts);
}

BoundednessReport estimate_multiplier_norm_matrix(const Matrix& a, const PeriodicGrid& grid,
                                                  double p1, double p2, bool weak,
                                                  const MultiplierOptions& opts) {
  return estimate_multiplier_impl(nullptr, &a, grid, p1, p2, weak, opts);
}

double reevaluate_multiplier_certificate(const Symbol& sigma, const PeriodicGrid& grid,
                                         const BoundednessReport& report) {
  if (report.witness_f.empty() || report.witness_g.empty()) return 0.0;
  GridFunction f(grid, report.witness_f);
  GridFunction g(grid, report.witness_g);
  BilinearKernel kernel(&sigma, nullptr, grid);
  return multiplier_objective(kernel, f, g, report.p1, report.p2, report.p0,
                              report.mode == "weak")
      .value;
}

EquivalenceRow equivalence_row(const Matrix& a, const PeriodicGrid& grid, double parameter,
                               double p1, double p2, const MultiplierOptions& mult_opts,
                               const EstimateOptions& est_opts) {
  EquivalenceRow row;
  row.parameter = parameter;
  row.grid_points = grid.points;
  const HEstimate h = estimate_H(a, est_opts);
  row.h_lower = h.combined.lower_bound;
  row.h_upper = h.combined.upper_bound;
  const BoundednessReport cert =
      estimate_multiplier_norm_matrix(a, grid, p1, p2, false, mult_opts);
  row.certificate = cert.certificate;
  row.ratio = cert.certificate > 0.0 ? row.h_lower / cert.certificate : 0.0;
  return row;
}

}  // namespace marcinlab
