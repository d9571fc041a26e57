// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#include "marcinlab/maximal.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "marcinlab/rng.hpp"

namespace marcinlab {

namespace {

constexpr double kPhaseEpsilon = 1e-12;

void check_column_span(const Matrix& a, int levels) {
  if (a.cols == 0) return;
  const int k_low = a.col_index(0);
  const int k_high = a.col_index(a.cols - 1);
  if (k_low < 1 || k_high > levels) {
    throw std::length_error("matrix column span does not fit the filtration depth");
  }
}

void check_row_span_as_levels(const Matrix& a, int levels) {
  if (a.rows == 0) return;
  if (a.row_index(0) < 1 || a.row_index(a.rows - 1) > levels) {
    throw std::length_error("matrix row span does not fit the filtration depth");
  }
}

// Martingale difference on raw storage; same block pass as the public op.
void mart_diff_raw(const ComplexVector& f, int levels, int k, ComplexVector& out) {
  const std::size_t parent = std::size_t{1} << (levels - k + 1);
  const std::size_t half = parent / 2;
  const std::size_t n = f.size();
  out.resize(n);
  for (std::size_t start = 0; start < n; start += parent) {
    Complex left{0.0, 0.0};
    Complex right{0.0, 0.0};
    for (std::size_t i = start; i < start + half; ++i) left += f[i];
    for (std::size_t i = start + half; i < start + parent; ++i) right += f[i];
    const Complex delta = (left - right) / static_cast<double>(parent);
    for (std::size_t i = start; i < start + half; ++i) out[i] = delta;
    for (std::size_t i = start + half; i < start + parent; ++i) out[i] = -delta;
  }
}

double prob_norm_p(const ComplexVector& v, double p) {
  const double weight = 1.0 / static_cast<double>(v.size());
  double acc = 0.0;
  for (const Complex& x : v) acc += std::pow(std::abs(x), p);
  return std::pow(weight * acc, 1.0 / p);
}

// Matrix block with all offsets normalized away; columns act as levels 1..cols.
Matrix strip_offsets(const Matrix& a) {
  Matrix b = a;
  b.row_offset = 0;
  b.col_offset = 0;
  return b;
}

// sum_k a_{jk} D_k f for one storage row, k = column position + 1.
void frozen_row(const Matrix& block, int row, const std::vector<ComplexVector>& diffs,
                ComplexVector& out) {
  const std::size_t n = diffs.empty() ? 0 : diffs.front().size();
  out.assign(n, Complex{0.0, 0.0});
  for (int c = 0; c < block.cols; ++c) {
    const Complex coeff = block.at(row, c);
    if (coeff == Complex{0.0, 0.0}) continue;
    const ComplexVector& d = diffs[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < n; ++i) out[i] += coeff * d[i];
  }
}

std::vector<ComplexVector> all_differences(const ComplexVector& f, int levels) {
  std::vector<ComplexVector> diffs(static_cast<std::size_t>(levels));
  for (int k = 1; k <= levels; ++k) {
    mart_diff_raw(f, levels, k, diffs[static_cast<std::size_t>(k - 1)]);
  }
  return diffs;
}

// Operator with a frozen atom -> row selector.
class FrozenSelectorOp {
 public:
  FrozenSelectorOp(const Matrix& block, const std::vector<int>& selector)
      : block_(block), selector_(selector), levels_(block.cols) {}

  void apply(const ComplexVector& f, ComplexVector& out) const {
    const std::size_t n = f.size();
    out.assign(n, Complex{0.0, 0.0});
    ComplexVector scratch;
    for (int c = 0; c < levels_; ++c) {
      mart_diff_raw(f, levels_, c + 1, scratch);
      for (std::size_t i = 0; i < n; ++i) {
        out[i] += block_.at(selector_[i], c) * scratch[i];
      }
    }
  }

  void apply_adjoint(const ComplexVector& h, ComplexVector& out) const {
    const std::size_t n = h.size();
    out.assign(n, Complex{0.0, 0.0});
    ComplexVector tmp(n);
    ComplexVector scratch;
    for (int c = 0; c < levels_; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        tmp[i] = std::conj(block_.at(selector_[i], c)) * h[i];
      }
      mart_diff_raw(tmp, levels_, c + 1, scratch);
      for (std::size_t i = 0; i < n; ++i) out[i] += scratch[i];
    }
  }

 private:
  const Matrix& block_;
  const std::vector<int>& selector_;
  int levels_;
};

Complex dual_value(Complex v, double r) {
  const double m2 = std::norm(v) + kPhaseEpsilon;
  return std::pow(m2, 0.5 * (r - 2.0)) * v;
}

struct InnerResult {
  double value = 0.0;
  ComplexVector vec;
  long long iterations = 0;
  bool converged = false;
};

// Nonlinear power iteration for the frozen operator norm L_p -> L_q.  With
// p = q = 2 this is the plain power method on T*T.
InnerResult frozen_operator_norm(const FrozenSelectorOp& op, double p, double q,
                                 const ComplexVector& start, int max_iters, double tol) {
  InnerResult res;
  ComplexVector x = start;
  double nx = prob_norm_p(x, p);
  if (nx == 0.0) return res;
  for (Complex& v : x) v /= nx;
  const double pstar = p > 1.01 ? p / (p - 1.0) : 40.0;
  ComplexVector y, z;
  double prev = -1.0;
  for (int it = 0; it < max_iters; ++it) {
    op.apply(x, y);
    const double ratio = prob_norm_p(y, q);
    res.iterations = it + 1;
    if (ratio == 0.0) break;
    if (ratio > res.value) {
      res.value = ratio;
      res.vec = x;
    }
    if (prev >= 0.0 && std::abs(ratio - prev) <= tol * std::max(1.0, ratio)) {
      res.converged = true;
      break;
    }
    prev = ratio;
    for (Complex& v : y) v = dual_value(v, q);
    op.apply_adjoint(y, z);
    for (Complex& v : z) v = dual_value(v, pstar);
    const double nz = prob_norm_p(z, p);
    if (nz == 0.0) break;
    for (Complex& v : z) v /= nz;
    x = std::move(z);
  }
  if (res.vec.empty()) res.vec = x;
  return res;
}

// Row values scanned in chunks so the selector update never stores all rows.
template <typename Visitor>
void scan_rows(const Matrix& block, const ComplexVector& f, Visitor&& visit) {
  const int levels = block.cols;
  constexpr int kChunk = 8;
  std::vector<ComplexVector> diffs = all_differences(f, levels);
  ComplexVector row;
  for (int j0 = 0; j0 < block.rows; j0 += kChunk) {
    const int j1 = std::min(block.rows, j0 + kChunk);
    for (int j = j0; j < j1; ++j) {
      frozen_row(block, j, diffs, row);
      visit(j, row);
    }
  }
}

std::vector<int> argmax_selector(const Matrix& block, const ComplexVector& f) {
  const std::size_t n = f.size();
  std::vector<int> sel(n, 0);
  std::vector<double> best(n, -1.0);
  scan_rows(block, f, [&](int j, const ComplexVector& row) {
    for (std::size_t i = 0; i < n; ++i) {
      const double v = std::abs(row[i]);
      if (v > best[i]) {
        best[i] = v;
        sel[i] = j;
      }
    }
  });
  return sel;
}

ComplexVector maximal_values(const Matrix& block, const ComplexVector& f) {
  const std::size_t n = f.size();
  ComplexVector out(n, Complex{0.0, 0.0});
  scan_rows(block, f, [&](int, const ComplexVector& row) {
    for (std::size_t i = 0; i < n; ++i) {
      const double v = std::abs(row[i]);
      if (v > out[i].real()) out[i] = Complex{v, 0.0};
    }
  });
  return out;
}

double weak_scan(const ComplexVector& maxfun, double p, double atoms, double* lambda_out) {
  std::vector<double> vals(maxfun.size());
  for (std::size_t i = 0; i < maxfun.size(); ++i) vals[i] = maxfun[i].real();
  std::sort(vals.begin(), vals.end(), std::greater<>());
  double best = 0.0;
  double lambda = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i + 1 < vals.size() && vals[i + 1] == vals[i]) continue;  // group ties
    const double prob = static_cast<double>(i + 1) / atoms;
    const double obj = vals[i] * std::pow(prob, 1.0 / p);
    if (obj > best) {
      best = obj;
      lambda = vals[i];
    }
  }
  if (lambda_out) *lambda_out = lambda;
  return best;
}

double mode_objective(const Matrix& block, EstimateMode mode, double p, double q,
                      const ComplexVector& f, double* lambda_out) {
  const double denom = prob_norm_p(f, p);
  if (denom == 0.0) return 0.0;
  const ComplexVector maxfun = maximal_values(block, f);
  switch (mode) {
    case EstimateMode::strong:
      return prob_norm_p(maxfun, p) / denom;
    case EstimateMode::weak:
      return weak_scan(maxfun, p, static_cast<double>(f.size()), lambda_out) / denom;
    case EstimateMode::mixed:
      return prob_norm_p(maxfun, q) / denom;
  }
  return 0.0;
}

struct AscentResult {
  double value = 0.0;
  ComplexVector witness;
  double lambda = 0.0;
  long long iterations = 0;
  bool converged = true;
  std::vector<int> selector;
};

AscentResult run_ascent(const Matrix& block, EstimateMode mode, double p, double q,
                        ComplexVector f, const EstimateOptions& opts) {
  AscentResult out;
  const double q_inner = (mode == EstimateMode::mixed) ? q : p;
  std::vector<int> selector = argmax_selector(block, f);
  double lambda = 0.0;
  out.value = mode_objective(block, mode, p, q, f, &lambda);
  out.witness = f;
  out.lambda = lambda;
  out.selector = selector;
  int stalled = 0;
  for (int alt = 0; alt < opts.max_alternations; ++alt) {
    FrozenSelectorOp op(block, selector);
    InnerResult inner = frozen_operator_norm(op, p, q_inner, f, opts.max_power_iterations,
                                             opts.tolerance);
    out.iterations += inner.iterations;
    if (inner.vec.empty()) break;
    f = inner.vec;
    const double obj = mode_objective(block, mode, p, q, f, &lambda);
    const bool improved = obj > out.value * (1.0 + opts.tolerance) ||
                          (out.value == 0.0 && obj > 0.0);
    if (obj > out.value) {
      out.value = obj;
      out.witness = f;
      out.lambda = lambda;
      out.selector = selector;
    }
    std::vector<int> next = argmax_selector(block, f);
    if (next == selector && !improved) {
      out.converged = true;
      return out;
    }
    // Oscillating selectors without objective gains count as converged too.
    stalled = improved ? 0 : stalled + 1;
    if (stalled >= 3) {
      out.converged = true;
      return out;
    }
    if (alt + 1 == opts.max_alternations) out.converged = false;
    selector = std::move(next);
  }
  return out;
}

ComplexVector restart_start(int restart, const DyadicSpace& space, std::uint64_t seed) {
  const std::size_t atoms = space.atom_count();
  ComplexVector f(atoms);
  if (restart == 0) {
    // Rademacher profile: every level difference has unit modulus.
    for (std::size_t w = 0; w < atoms; ++w) {
      double v = 0.0;
      for (int k = 0; k < space.levels; ++k) {
        v += ((w >> (space.levels - 1 - k)) & 1U) ? -1.0 : 1.0;
      }
      f[w] = Complex{v, 0.0};
    }
    if (space.levels == 0) f[0] = Complex{1.0, 0.0};
  } else if (restart == 1) {
    f.assign(atoms, Complex{0.0, 0.0});
    f[0] = Complex{1.0, 0.0};
  } else {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(restart)));
    for (std::size_t w = 0; w < atoms; ++w) f[w] = rng.normal_complex();
  }
  return f;
}

NormEstimate zero_estimate(EstimateMode mode, double p, double q, const EstimateOptions& opts) {
  NormEstimate est;
  est.quantity = std::string("h_") + estimate_mode_name(mode);
  est.p = p;
  est.q = (mode == EstimateMode::mixed) ? q : 0.0;
  est.lower_bound = 0.0;
  est.seed = opts.seed;
  est.restarts = 0;
  est.converged = true;
  if (opts.attach_bv_upper) {
    est.upper_bound = 0.0;
    est.upper_provenance = "bv";
  }
  return est;
}

}  // namespace

std::string estimate_mode_name(EstimateMode mode) {
  switch (mode) {
    case EstimateMode::strong: return "strong";
    case EstimateMode::weak: return "weak";
    case EstimateMode::mixed: return "mixed";
  }
  return "strong";
}

std::vector<SampleVector> apply_row_operators(const Matrix& a, const SampleVector& f) {
  check_column_span(a, f.space.levels);
  std::vector<SampleVector> rows;
  rows.reserve(static_cast<std::size_t>(a.rows));
  std::vector<ComplexVector> diffs;
  diffs.reserve(static_cast<std::size_t>(a.cols));
  for (int c = 0; c < a.cols; ++c) {
    ComplexVector d;
    mart_diff_raw(f.values, f.space.levels, a.col_index(c), d);
    diffs.push_back(std::move(d));
  }
  ComplexVector row;
  for (int j = 0; j < a.rows; ++j) {
    row.assign(f.size(), Complex{0.0, 0.0});
    for (int c = 0; c < a.cols; ++c) {
      const Complex coeff = a.at(j, c);
      if (coeff == Complex{0.0, 0.0}) continue;
      for (std::size_t i = 0; i < row.size(); ++i) row[i] += coeff * diffs[c][i];
    }
    rows.emplace_back(f.space, std::move(row));
    row.clear();
  }
  return rows;
}

SampleVector maximal_function(const Matrix& a, const SampleVector& f) {
  check_column_span(a, f.space.levels);
  SampleVector out = SampleVector::zero(f.space);
  std::vector<ComplexVector> diffs;
  for (int c = 0; c < a.cols; ++c) {
    ComplexVector d;
    mart_diff_raw(f.values, f.space.levels, a.col_index(c), d);
    diffs.push_back(std::move(d));
  }
  ComplexVector row;
  for (int j = 0; j < a.rows; ++j) {
    row.assign(f.size(), Complex{0.0, 0.0});
    for (int c = 0; c < a.cols; ++c) {
      const Complex coeff = a.at(j, c);
      if (coeff == Complex{0.0, 0.0}) continue;
      for (std::size_t i = 0; i < row.size(); ++i) row[i] += coeff * diffs[c][i];
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      const double v = std::abs(row[i]);
      if (v > out.values[i].real()) out.values[i] = Complex{v, 0.0};
    }
  }
  return out;
}

NormEstimate estimate_h(const Matrix& a, EstimateMode mode, double p, double q,
                        const EstimateOptions& opts) {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("exponent p must be in (0, inf)");
  if (mode == EstimateMode::mixed && (!(q > 0.0) || !(q < p))) {
    throw std::invalid_argument("mixed estimates need 0 < q < p");
  }
  const Matrix block = strip_offsets(a);
  if (block.rows == 0 || block.cols == 0 || block.is_zero()) {
    return zero_estimate(mode, p, q, opts);
  }
  const DyadicSpace space(block.cols);
  const std::size_t atoms = space.atom_count();

  AscentResult best;
  best.value = -1.0;
  long long iterations = 0;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    AscentResult cand = run_ascent(block, mode, p, q, restart_start(r, space, opts.seed), opts);
    iterations += cand.iterations;
    if (cand.value > best.value) best = cand;
  }

  // Local selector flips on small instances; each candidate gets a full
  // frozen solve seeded from the current witness.
  const double q_inner = (mode == EstimateMode::mixed) ? q : p;
  if (atoms * static_cast<std::size_t>(block.rows) <= opts.polish_entry_limit &&
      best.value > 0.0) {
    bool improved = true;
    int rounds = 0;
    while (improved && rounds++ < 64) {
      improved = false;
      for (std::size_t w = 0; w < atoms && !improved; ++w) {
        for (int j = 0; j < block.rows && !improved; ++j) {
          if (best.selector[w] == j) continue;
          std::vector<int> sel = best.selector;
          sel[w] = j;
          FrozenSelectorOp op(block, sel);
          InnerResult inner = frozen_operator_norm(op, p, q_inner, best.witness,
                                                   opts.max_power_iterations, opts.tolerance);
          iterations += inner.iterations;
          if (inner.vec.empty()) continue;
          double lambda = 0.0;
          const double obj = mode_objective(block, mode, p, q, inner.vec, &lambda);
          if (obj > best.value * (1.0 + 1e-12)) {
            best.value = obj;
            best.witness = inner.vec;
            best.lambda = lambda;
            best.selector = argmax_selector(block, inner.vec);
            improved = true;
          }
        }
      }
    }
  }

  NormEstimate est;
  est.quantity = std::string("h_") + estimate_mode_name(mode);
  est.p = p;
  est.q = (mode == EstimateMode::mixed) ? q : 0.0;
  est.witness = best.witness;
  est.witness_levels = space.levels;
  est.seed = opts.seed;
  est.restarts = std::max(1, opts.restarts);
  est.iterations = iterations;
  est.converged = best.converged;
  double lambda = 0.0;
  est.lower_bound = mode_objective(block, mode, p, q, best.witness, &lambda);
  if (mode == EstimateMode::weak) est.weak_threshold = lambda;

  // Certified explicit-constant upper bounds are only attached where the
  // constants are pinned (p = 2, strong or weak).
  const bool upper_ok = (p == 2.0) && mode != EstimateMode::mixed;
  std::optional<double> upper;
  std::string provenance;
  if (opts.attach_bv_upper && upper_ok) {
    upper = bv_upper_bound(block);
    provenance = "bv";
  }
  if (opts.attach_trivial_upper && upper_ok) {
    const double t = column_sup_upper_bound(block);
    if (!upper || t < *upper) {
      upper = t;
      provenance = "trivial";
    }
  }
  if (opts.lorentz_weights) {
    const double functional =
        lorentz_column_bound(block, *opts.lorentz_weights).column_bound;
    est.lorentz_functional = functional;
    // The theorem's constant is not explicit; only report the functional as
    // an upper bound when it does not undercut the certificate.
    if (upper_ok && functional >= est.lower_bound && (!upper || functional < *upper)) {
      upper = functional;
      provenance = "lorentz";
    }
  }
  est.upper_bound = upper;
  est.upper_provenance = provenance;
  return est;
}

double reevaluate_certificate(const Matrix& a, const NormEstimate& estimate) {
  const Matrix block = strip_offsets(a);
  EstimateMode mode = EstimateMode::strong;
  if (estimate.quantity == "h_weak") mode = EstimateMode::weak;
  if (estimate.quantity == "h_mixed") mode = EstimateMode::mixed;
  if (estimate.witness.empty()) return 0.0;
  return mode_objective(block, mode, estimate.p, estimate.q, estimate.witness, nullptr);
}

double exact_h2_oracle(const Matrix& a, const DyadicSpace& space) {
  const Matrix block = strip_offsets(a);
  check_column_span(block, space.levels);
  if (block.rows == 0) return 0.0;
  const std::size_t atoms = space.atom_count();
  double combos = 1.0;
  for (std::size_t i = 0; i < atoms; ++i) {
    combos *= static_cast<double>(block.rows);
    if (combos > 1e6) {
      throw std::length_error(
          "selector enumeration rows^atoms exceeds the 10^6 oracle limit");
    }
  }
  if (block.is_zero()) return 0.0;

  // Dense difference operators; entries of E_k are 1/block_size on blocks.
  const int levels = space.levels;
  std::vector<Eigen::MatrixXcd> diff(static_cast<std::size_t>(levels));
  for (int k = 1; k <= levels; ++k) {
    Eigen::MatrixXcd ek = Eigen::MatrixXcd::Zero(atoms, atoms);
    Eigen::MatrixXcd ekm = Eigen::MatrixXcd::Zero(atoms, atoms);
    const std::size_t bs = space.block_size(k);
    const std::size_t bsm = space.block_size(k - 1);
    for (std::size_t w = 0; w < atoms; ++w) {
      const std::size_t b0 = (w / bs) * bs;
      for (std::size_t u = b0; u < b0 + bs; ++u) ek(w, u) = 1.0 / static_cast<double>(bs);
      const std::size_t c0 = (w / bsm) * bsm;
      for (std::size_t u = c0; u < c0 + bsm; ++u) ekm(w, u) = 1.0 / static_cast<double>(bsm);
    }
    diff[static_cast<std::size_t>(k - 1)] = ek - ekm;
  }

  std::vector<int> selector(atoms, 0);
  Eigen::MatrixXcd ts(atoms, atoms);
  double best = 0.0;
  while (true) {
    ts.setZero();
    for (std::size_t w = 0; w < atoms; ++w) {
      for (int c = 0; c < block.cols; ++c) {
        const Complex coeff = block.at(selector[w], c);
        if (coeff == Complex{0.0, 0.0}) continue;
        ts.row(w) += coeff * diff[static_cast<std::size_t>(c)].row(w);
      }
    }
    // Uniform atom weights cancel, so the L2(P) operator norm is the plain
    // spectral norm.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ts);
    best = std::max(best, svd.singularValues()(0));

    std::size_t pos = 0;
    while (pos < atoms) {
      if (++selector[pos] < block.rows) break;
      selector[pos] = 0;
      ++pos;
    }
    if (pos == atoms) break;
  }
  return best;
}

HEstimate estimate_H(const Matrix& a, const EstimateOptions& opts) {
  HEstimate out;
  out.sup_norm = a.sup_norm();
  out.lower_part = estimate_h_strong(lower_triangle(a), 2.0, opts);
  out.upper_part = estimate_h_strong(upper_triangle_transposed(a), 2.0, opts);
  NormEstimate combined;
  combined.quantity = "H";
  combined.p = 2.0;
  combined.lower_bound = out.lower_part.lower_bound + out.upper_part.lower_bound + out.sup_norm;
  combined.seed = opts.seed;
  combined.restarts = std::max(1, opts.restarts);
  combined.iterations = out.lower_part.iterations + out.upper_part.iterations;
  combined.converged = out.lower_part.converged && out.upper_part.converged;
  if (out.lower_part.upper_bound && out.upper_part.upper_bound) {
    combined.upper_bound = *out.lower_part.upper_bound + *out.upper_part.upper_bound + out.sup_norm;
    combined.upper_provenance = out.lower_part.upper_provenance;
  }
  out.combined = std::move(combined);
  return out;
}

SampleVector apply_discrete_bilinear(const Matrix& a, const SampleVector& f,
                                     const SampleVector& g) {
  if (f.space != g.space) throw std::invalid_argument("sample vectors live on different spaces");
  check_column_span(a, g.space.levels);
  check_row_span_as_levels(a, f.space.levels);
  SampleVector out = SampleVector::zero(f.space);
  ComplexVector df, dg, acc;
  for (int r = 0; r < a.rows; ++r) {
    acc.assign(f.size(), Complex{0.0, 0.0});
    bool any = false;
    for (int c = 0; c < a.cols; ++c) {
      const Complex coeff = a.at(r, c);
      if (coeff == Complex{0.0, 0.0}) continue;
      mart_diff_raw(g.values, g.space.levels, a.col_index(c), dg);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coeff * dg[i];
      any = true;
    }
    if (!any) continue;
    mart_diff_raw(f.values, f.space.levels, a.row_index(r), df);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += df[i] * acc[i];
  }
  return out;
}

AdversarialPair adversarial_pair(const Matrix& a, const SampleVector& f, double lambda) {
  if (!a.is_strictly_lower_triangular()) {
    throw std::invalid_argument("stopping-time construction needs a strictly lower-triangular matrix");
  }
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  bool nonzero = false;
  for (const Complex& v : f.values) nonzero = nonzero || v != Complex{0.0, 0.0};
  if (!nonzero) throw std::invalid_argument("witness input must be nonzero");
  check_column_span(a, f.space.levels);
  check_row_span_as_levels(a, f.space.levels);

  const int levels = f.space.levels;
  const std::size_t atoms = f.space.atom_count();
  AdversarialPair out;
  out.g = SampleVector::zero(f.space);
  std::vector<bool> covered(atoms, false);

  ComplexVector row, dg;
  for (int r = 0; r < a.rows; ++r) {
    const int j = a.row_index(r);
    row.assign(atoms, Complex{0.0, 0.0});
    for (int c = 0; c < a.cols; ++c) {
      const Complex coeff = a.at(r, c);
      if (coeff == Complex{0.0, 0.0}) continue;
      mart_diff_raw(f.values, levels, a.col_index(c), dg);
      for (std::size_t i = 0; i < atoms; ++i) row[i] += coeff * dg[i];
    }
    // First-passage level-(j-1) blocks; ancestors already above lambda were
    // fully covered at an earlier row, so a plain mask test suffices.
    const std::size_t bs = f.space.block_size(j - 1);
    for (std::size_t start = 0; start < atoms; start += bs) {
      if (covered[start]) continue;
      if (std::abs(row[start]) <= lambda) continue;
      const std::size_t half = bs / 2;
      for (std::size_t i = start; i < start + bs; ++i) {
        covered[i] = true;
        const bool second_half = (i - start) >= half;
        out.g.values[i] = Complex{second_half ? -1.0 : 1.0, 0.0};
      }
    }
  }

  std::size_t covered_count = 0;
  for (bool c : covered) covered_count += c ? 1 : 0;
  out.level_probability = static_cast<double>(covered_count) / static_cast<double>(atoms);
  const double f2 = f.norm_p(2.0);
  out.weak_lower_bound = lambda * std::sqrt(out.level_probability) / f2;
  const double g2 = out.g.norm_p(2.0);
  if (g2 > 0.0) {
    // The row process pairs with the level differences of the constructed
    // function, so it enters the first slot of the bilinear model.
    out.evaluated_ratio = apply_discrete_bilinear(a, out.g, f).norm_p(1.0) / (f2 * g2);
  }
  return out;
}

}  // namespace marcinlab
