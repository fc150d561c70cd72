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

#ifndef RKWAVE_SRC_FFT_HPP_
#define RKWAVE_SRC_FFT_HPP_

#include <complex>
#include <vector>

namespace rkwave::detail {

// Unitary in-place complex DFT on an n^d grid (d = 1, 2, 3).  Plans use
// FFTW_ESTIMATE so repeated runs pick the same algorithm.
class Fft {
 public:
  Fft(int d, int n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  void forward(std::complex<double>* data) const;
  void inverse(std::complex<double>* data) const;

  int dim() const { return d_; }
  int n() const { return n_; }
  std::size_t size() const { return size_; }
  // Signed frequency index of position k along one axis.
  int signed_index(int k) const { return k < n_ / 2 ? k : k - n_; }

 private:
  void run(void* plan, std::complex<double>* data) const;
  int d_;
  int n_;
  std::size_t size_;
  void* fwd_ = nullptr;
  void* inv_ = nullptr;
  double scale_;
};

}  // namespace rkwave::detail

#endif  // RKWAVE_SRC_FFT_HPP_
