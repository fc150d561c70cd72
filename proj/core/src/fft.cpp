// Copyright 2026 The rkwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <vector>

#include "rkwave/errors.hpp"

namespace rkwave::detail {

namespace {
// Planner calls are not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(int d, int n) : d_(d), n_(n) {
  if (d < 1 || d > 3 || n < 2) throw PreconditionError("Fft: bad shape");
  size_ = 1;
  for (int k = 0; k < d; ++k) size_ *= static_cast<std::size_t>(n);
  scale_ = 1.0 / std::sqrt(static_cast<double>(size_));
  std::vector<int> dims(d, n);
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto* buf = fftw_alloc_complex(size_);
  fwd_ = fftw_plan_dft(d, dims.data(), buf, buf, FFTW_FORWARD,
                       FFTW_ESTIMATE | FFTW_UNALIGNED);
  inv_ = fftw_plan_dft(d, dims.data(), buf, buf, FFTW_BACKWARD,
                       FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  if (!fwd_ || !inv_) throw NumericError("Fft: planning failed");
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (inv_) fftw_destroy_plan(static_cast<fftw_plan>(inv_));
}

void Fft::run(void* plan, std::complex<double>* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(plan), p, p);
  for (std::size_t i = 0; i < size_; ++i) data[i] *= scale_;
}

void Fft::forward(std::complex<double>* data) const { run(fwd_, data); }
void Fft::inverse(std::complex<double>* data) const { run(inv_, data); }

}  // namespace rkwave::detail
