// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "marcinlab/counterexamples.hpp"
#include "marcinlab/maximal.hpp"
#include "marcinlab/rng.hpp"

using namespace marcinlab;

namespace {

SampleVector real_vector(std::initializer_list<double> vals) {
  ComplexVector v;
  for (double x : vals) v.emplace_back(x, 0.0);
  const DyadicSpace space = DyadicSpace::from_size(v.size());
  return SampleVector(space, std::move(v));
}

Matrix random_real_matrix(int rows, int cols, Rng& rng) {
  Matrix a(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) a.at(r, c) = Complex{rng.normal(), 0.0};
  }
  return a;
}

EstimateOptions tight_options(std::uint64_t seed) {
  EstimateOptions opts;
  opts.restarts = 24;
  opts.max_power_iterations = 2000;
  opts.tolerance = 1e-12;
  opts.seed = seed;
  return opts;
}

}  // namespace

TEST_CASE("row operators") {
  const SampleVector f = real_vector({4, 0, 0, 0});

  const Matrix one = Matrix::from_real_rows({{1.0}});
  const auto rows = apply_row_operators(one, f);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].values[0] == Complex{1.0, 0.0});
  CHECK(rows[0].values[2] == Complex{-1.0, 0.0});

  const Matrix zero(2, 2);
  for (const auto& row : apply_row_operators(zero, f)) CHECK(row.norm_inf() == 0.0);

  const Matrix sum = Matrix::from_real_rows({{1.0, 1.0}});
  const auto srows = apply_row_operators(sum, f);
  CHECK(srows[0].values[0] == Complex{3.0, 0.0});
  CHECK(srows[0].values[1] == Complex{-1.0, 0.0});
  CHECK(srows[0].values[2] == Complex{-1.0, 0.0});
  CHECK(srows[0].values[3] == Complex{-1.0, 0.0});

  const Matrix wide(1, 3);
  CHECK_THROWS_AS(apply_row_operators(wide, f), std::length_error);
}

TEST_CASE("maximal function") {
  const SampleVector f = real_vector({4, 0, 0, 0});

  const Matrix pm = Matrix::from_real_rows({{1.0}, {-1.0}});
  const Matrix single = Matrix::from_real_rows({{1.0}});
  const SampleVector m1 = maximal_function(single, f);
  const SampleVector m2 = maximal_function(pm, f);
  for (std::size_t i = 0; i < m1.size(); ++i) CHECK(m1.values[i] == m2.values[i]);

  const Matrix eye = Matrix::from_real_rows({{1.0, 0.0}, {0.0, 1.0}});
  const SampleVector m = maximal_function(eye, f);
  CHECK(m.values[0] == Complex{2.0, 0.0});
  CHECK(m.values[1] == Complex{2.0, 0.0});
  CHECK(m.values[2] == Complex{1.0, 0.0});
  CHECK(m.values[3] == Complex{1.0, 0.0});
}

TEST_CASE("strong(2) estimates on pinned instances") {
  const EstimateOptions opts = tight_options(1);

  const Matrix one = Matrix::from_real_rows({{1.0}});
  const NormEstimate e1 = estimate_h_strong(one, 2.0, opts);
  CHECK(e1.lower_bound == doctest::Approx(1.0).epsilon(1e-10));

  const Matrix eye = Matrix::from_real_rows({{1.0, 0.0}, {0.0, 1.0}});
  const NormEstimate e2 = estimate_h_strong(eye, 2.0, opts);
  CHECK(std::abs(e2.lower_bound - 1.0) <= 1e-6);

  const NormEstimate e3 = estimate_h_strong(sign_matrix(4, 0.25), 2.0, opts);
  CHECK(e3.lower_bound >= std::pow(4.0, 0.25) - 1e-9);

  CHECK_THROWS_AS(estimate_h(one, EstimateMode::strong, 0.0, 0.0, opts), std::invalid_argument);
  CHECK_THROWS_AS(estimate_h(one, EstimateMode::mixed, 2.0, 3.0, opts), std::invalid_argument);
}

TEST_CASE("exhaustive oracle on pinned instances") {
  const Matrix one = Matrix::from_real_rows({{1.0}});
  CHECK(exact_h2_oracle(one, DyadicSpace(1)) == doctest::Approx(1.0).epsilon(1e-12));

  const Matrix eye = Matrix::from_real_rows({{1.0, 0.0}, {0.0, 1.0}});
  CHECK(exact_h2_oracle(eye, DyadicSpace(2)) == doctest::Approx(1.0).epsilon(1e-10));

  const Matrix had = Matrix::from_real_rows({{1.0, 1.0}, {1.0, -1.0}});
  const double oracle = exact_h2_oracle(had, DyadicSpace(2));
  const NormEstimate est = estimate_h_strong(had, 2.0, tight_options(3));
  CHECK(std::abs(est.lower_bound - oracle) <= 1e-6);

  const Matrix big(40, 2);
  CHECK_THROWS_AS(exact_h2_oracle(big, DyadicSpace(4)), std::length_error);
}

TEST_CASE("estimator agrees with the oracle on random small instances") {
  Rng rng(42);
  for (int trial = 0; trial < 8; ++trial) {
    const int rows = 2 + static_cast<int>(rng.below(2));
    const int cols = 2 + static_cast<int>(rng.below(2));
    const Matrix a = random_real_matrix(rows, cols, rng);
    const DyadicSpace space(3);
    Matrix padded(rows, 3);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) padded.at(r, c) = a.at(r, c);
    }
    const double oracle = exact_h2_oracle(padded, space);
    const NormEstimate est = estimate_h_strong(padded, 2.0, tight_options(100 + trial));
    CHECK(est.lower_bound <= oracle + 1e-9);
    CHECK(std::abs(est.lower_bound - oracle) <= 1e-6);
  }
}

TEST_CASE("certificates are sound and dominated by certified upper bounds") {
  Rng rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    const int rows = 1 + static_cast<int>(rng.below(4));
    const int cols = 1 + static_cast<int>(rng.below(4));
    const Matrix a = random_real_matrix(rows, cols, rng);
    EstimateOptions opts;
    opts.restarts = 6;
    opts.seed = 500 + trial;
    opts.attach_bv_upper = true;
    opts.attach_trivial_upper = true;
    const NormEstimate est = estimate_h_strong(a, 2.0, opts);
    // soundness: stored witness reproduces the bound
    CHECK(reevaluate_certificate(a, est) == doctest::Approx(est.lower_bound).epsilon(1e-12));
    REQUIRE(est.upper_bound.has_value());
    CHECK(est.lower_bound <= *est.upper_bound + 1e-9);
    CHECK(est.lower_bound <= bv_upper_bound(a) + 1e-9);
    CHECK(est.lower_bound <= column_sup_upper_bound(a) + 1e-9);
  }
}

TEST_CASE("scaling and zero padding invariances") {
  Rng rng(9);
  const Matrix a = random_real_matrix(3, 3, rng);
  const NormEstimate base = estimate_h_strong(a, 2.0, tight_options(11));

  // exact homogeneity for a power-of-two scale, using the stored witness
  Matrix doubled = a;
  for (Complex& v : doubled.entries) v *= 2.0;
  NormEstimate scaled_est = base;
  const double ratio = reevaluate_certificate(doubled, scaled_est);
  CHECK(ratio == 2.0 * base.lower_bound);

  // zero padding leaves the estimate unchanged (within estimator tolerance)
  const Matrix padded = insert_zeros(a, {1, 2, 3}, {1, 3, 5});
  const NormEstimate pe = estimate_h_strong(padded, 2.0, tight_options(11));
  CHECK(std::abs(pe.lower_bound - base.lower_bound) <= 1e-6);

  // a row submatrix cannot beat the full matrix
  Matrix sub(2, 3);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 3; ++c) sub.at(r, c) = a.at(r, c);
  }
  const NormEstimate se = estimate_h_strong(sub, 2.0, tight_options(11));
  CHECK(base.lower_bound >= se.lower_bound - 1e-9);
}

TEST_CASE("weak and mixed estimates stay below the strong one") {
  Rng rng(23);
  const Matrix a = random_real_matrix(3, 3, rng);
  const EstimateOptions opts = tight_options(31);
  const NormEstimate strong = estimate_h_strong(a, 2.0, opts);
  const NormEstimate weak = estimate_h(a, EstimateMode::weak, 2.0, 0.0, opts);
  CHECK(weak.lower_bound <= strong.lower_bound + 1e-9);
  CHECK(weak.weak_threshold.has_value());
  const NormEstimate mixed = estimate_h(a, EstimateMode::mixed, 2.0, 1.0, opts);
  CHECK(mixed.lower_bound <= strong.lower_bound + 1e-9);
  CHECK(mixed.q == 1.0);
}

TEST_CASE("sign transforms obey the L4 martingale bound") {
  Rng rng(77);
  for (int trial = 0; trial < 3; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(3));
    Matrix row(1, n);
    for (int c = 0; c < n; ++c) row.at(0, c) = Complex{rng.below(2) ? 1.0 : -1.0, 0.0};
    EstimateOptions opts;
    opts.restarts = 8;
    opts.seed = 600 + trial;
    const NormEstimate est = estimate_h(row, EstimateMode::strong, 4.0, 0.0, opts);
    CHECK(est.lower_bound <= 3.0 + 0.05);
  }
}

TEST_CASE("H functional assembly") {
  EstimateOptions opts;
  opts.restarts = 8;
  opts.seed = 2;
  opts.attach_bv_upper = true;

  const HEstimate zero = estimate_H(Matrix(3, 3), opts);
  CHECK(zero.combined.lower_bound == 0.0);

  Matrix diag(3, 3);
  for (int i = 0; i < 3; ++i) diag.at(i, i) = Complex{0.0, -2.5};
  const HEstimate d = estimate_H(diag, opts);
  CHECK(d.combined.lower_bound == doctest::Approx(2.5));
  CHECK(d.lower_part.lower_bound == 0.0);
  CHECK(d.upper_part.lower_bound == 0.0);

  const Matrix ones_lower = lower_triangle(Matrix::from_real_rows(
      {{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}}));
  const HEstimate h = estimate_H(ones_lower, opts);
  REQUIRE(h.combined.upper_bound.has_value());
  CHECK(*h.combined.upper_bound <= 5.0 + 1e-12);
  CHECK(h.combined.lower_bound <= *h.combined.upper_bound + 1e-9);
}

TEST_CASE("discrete bilinear model") {
  // a_{21} = 1 picks up (D_2 f)(D_1 g)
  Matrix a(2, 2);
  a.at(1, 0) = Complex{1.0, 0.0};
  const SampleVector f = real_vector({4, 0, 0, 0});
  const SampleVector v = apply_discrete_bilinear(a, f, f);
  // D_2 f = (2,-2,0,0), D_1 f = (1,1,-1,-1)
  CHECK(v.values[0] == Complex{2.0, 0.0});
  CHECK(v.values[1] == Complex{-2.0, 0.0});
  CHECK(v.values[2] == Complex{0.0, 0.0});
  CHECK(v.values[3] == Complex{0.0, 0.0});

  CHECK(apply_discrete_bilinear(Matrix(2, 2), f, f).norm_inf() == 0.0);

  // bilinearity with exact scales
  SampleVector f2 = f, f3 = f;
  for (auto& x : f2.values) x *= 2.0;
  for (auto& x : f3.values) x *= 3.0;
  const SampleVector lhs = apply_discrete_bilinear(a, f2, f3);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    CHECK(lhs.values[i] == 6.0 * v.values[i]);
  }
}

TEST_CASE("stopping time construction") {
  // strictly lower triangular with a_{21} = 1 on a 2-level space
  Matrix a(2, 2);
  a.at(1, 0) = Complex{1.0, 0.0};

  // f scaled so that |f_2| = |D_1 f| = 2 > 1
  SampleVector f = real_vector({2, 2, -2, -2});
  const AdversarialPair pair = adversarial_pair(a, f, 1.0);
  CHECK(pair.level_probability == doctest::Approx(1.0));
  CHECK(pair.evaluated_ratio > 0.0);
  // ||g||_2^2 equals the level-set probability
  CHECK(std::pow(pair.g.norm_p(2.0), 2) == doctest::Approx(pair.level_probability));
  CHECK(pair.evaluated_ratio >= pair.weak_lower_bound - 1e-12);

  // lambda above the peak leaves an empty level set
  const AdversarialPair empty = adversarial_pair(a, f, 10.0);
  CHECK(empty.level_probability == 0.0);
  CHECK(empty.weak_lower_bound == 0.0);

  Matrix not_lower = Matrix::from_real_rows({{1.0, 0.0}, {0.0, 1.0}});
  CHECK_THROWS_AS(adversarial_pair(not_lower, f, 1.0), std::invalid_argument);
}

TEST_CASE("adversarial pair on random lower-triangular instances") {
  Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(3));
    Matrix a(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < r; ++c) a.at(r, c) = Complex{rng.normal(), rng.normal()};
    }
    SampleVector f(DyadicSpace(n), ComplexVector(std::size_t{1} << n));
    for (auto& x : f.values) x = rng.normal_complex();
    const SampleVector maxfun = maximal_function(lower_triangle(a), f);
    const double lambda = 0.5 * maxfun.norm_inf();
    if (lambda == 0.0) continue;
    const AdversarialPair pair = adversarial_pair(a, f, lambda);
    CHECK(std::pow(pair.g.norm_p(2.0), 2) ==
          doctest::Approx(pair.level_probability).epsilon(1e-12));
    CHECK(pair.evaluated_ratio >= pair.weak_lower_bound - 1e-12);
  }
}

TEST_CASE("estimates are deterministic and flag exhausted budgets") {
  Rng rng(91);
  const Matrix a = random_real_matrix(3, 3, rng);
  EstimateOptions opts;
  opts.restarts = 5;
  opts.seed = 123;
  const NormEstimate first = estimate_h_strong(a, 2.0, opts);
  const NormEstimate second = estimate_h_strong(a, 2.0, opts);
  CHECK(first.lower_bound == second.lower_bound);
  CHECK(first.witness == second.witness);

  // starved budgets still return a certificate, flagged as unconverged
  EstimateOptions starved = opts;
  starved.restarts = 1;
  starved.max_alternations = 1;
  starved.max_power_iterations = 2;
  const NormEstimate rough = estimate_h_strong(a, 2.0, starved);
  CHECK(rough.lower_bound > 0.0);
  CHECK(rough.lower_bound <= first.lower_bound + 1e-12);
  CHECK_FALSE(rough.converged);
  CHECK(reevaluate_certificate(a, rough) == rough.lower_bound);
}

TEST_CASE("adversarial pair rejects a zero input") {
  Matrix a(2, 2);
  a.at(1, 0) = Complex{1.0, 0.0};
  const SampleVector zero = SampleVector::zero(DyadicSpace(2));
  CHECK_THROWS_AS(adversarial_pair(a, zero, 1.0), std::invalid_argument);
  const SampleVector f = real_vector({2, 2, -2, -2});
  CHECK_THROWS_AS(adversarial_pair(a, f, 0.0), std::invalid_argument);
}
