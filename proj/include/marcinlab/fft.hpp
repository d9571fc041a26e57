// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

namespace marcinlab {

// Unnormalized discrete transforms (FFTW backend, deterministic plans):
//   forward:  F[m] = sum_i f[i] exp(-2 pi i m i / M)
//   backward: f[i] = sum_m F[m] exp(+2 pi i m i / M)
void fft_forward(std::vector<std::complex<double>>& data);
void fft_backward(std::vector<std::complex<double>>& data);

}  // namespace marcinlab
