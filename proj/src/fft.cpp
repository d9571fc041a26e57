// Copyright (c) the marcinlab authors
// SPDX-License-Identifier: Apache-2.0

#include "marcinlab/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace marcinlab {

namespace {

// One cached plan pair per size, executed on its own aligned buffer.  FFTW
// plan creation is not thread-safe, execution on distinct buffers is; the
// mutex serializes both since transforms are cheap relative to the callers.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  void execute(std::vector<std::complex<double>>& data, int sign) {
    const std::size_t n = data.size();
    if (n == 0) return;
    std::lock_guard<std::mutex> lock(mutex_);
    Entry& e = entry(n);
    // std::complex<double> is layout-compatible with fftw_complex.
    std::memcpy(static_cast<void*>(e.buffer), static_cast<const void*>(data.data()),
                n * sizeof(fftw_complex));
    fftw_execute(sign == FFTW_FORWARD ? e.forward : e.backward);
    std::memcpy(static_cast<void*>(data.data()), static_cast<const void*>(e.buffer),
                n * sizeof(fftw_complex));
  }

 private:
  struct Entry {
    fftw_complex* buffer = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
  };

  Entry& entry(std::size_t n) {
    auto it = entries_.find(n);
    if (it != entries_.end()) return it->second;
    Entry e;
    e.buffer = fftw_alloc_complex(n);
    if (!e.buffer) throw std::bad_alloc();
    e.forward = fftw_plan_dft_1d(static_cast<int>(n), e.buffer, e.buffer, FFTW_FORWARD,
                                 FFTW_ESTIMATE);
    e.backward = fftw_plan_dft_1d(static_cast<int>(n), e.buffer, e.buffer, FFTW_BACKWARD,
                                  FFTW_ESTIMATE);
    if (!e.forward || !e.backward) throw std::runtime_error("fftw plan creation failed");
    return entries_.emplace(n, e).first->second;
  }

  std::mutex mutex_;
  std::map<std::size_t, Entry> entries_;
};

}  // namespace

void fft_forward(std::vector<std::complex<double>>& data) {
  PlanCache::instance().execute(data, FFTW_FORWARD);
}

void fft_backward(std::vector<std::complex<double>>& data) {
  PlanCache::instance().execute(data, FFTW_BACKWARD);
}

}  // namespace marcinlab
