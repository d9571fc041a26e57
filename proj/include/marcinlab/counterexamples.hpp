// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "marcinlab/dyadic.hpp"
#include "marcinlab/lorentz.hpp"
#include "marcinlab/matrix.hpp"

namespace marcinlab {

struct CounterexampleReport {
  int n = 0;            // number of columns / filtration depth
  double theta = 0.0;
  int rows = 0;
  int cols = 0;
  double ratio = 0.0;   // achieved maximal ratio
  double target = 0.0;  // n^(1/2 - theta)
  bool exact_match = false;
};

// 2^n x n matrix whose rows run through all sign patterns, scaled by
// n^-theta; bit b of the row index gives the sign of column b+1 (0 -> +1).
Matrix sign_matrix(int n, double theta);

// f = sum of the level Rademacher functions: |D_k f| = 1 for every level and
// ||f||_2 = sqrt(levels).
SampleVector rademacher_witness(const DyadicSpace& space);

// Evaluates the maximal function of sign_matrix(n, theta) at the Rademacher
// witness; the achieved ratio equals n^(1/2-theta) by construction.
CounterexampleReport verify_counterexample(int n, double theta);

// Square banded matrix a_{jk} = w_{|j-k|+1}.
Matrix band_matrix(const WeightSequence& w, int size);

}  // namespace marcinlab
