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

// Free resolvent kernels R0^{+-}(lambda^2; r) and their decompositions.

#ifndef RKWAVE_RESOLVENT_HPP_
#define RKWAVE_RESOLVENT_HPP_

#include <string>
#include <vector>

#include "rkwave/common.hpp"

namespace rkwave {

// Supported dimensions: 1, 2, 3, 5, 7.  The wave-operator pipeline uses 1..3.
class Dimension {
 public:
  explicit Dimension(int d);
  int value() const { return d_; }
  bool pipeline() const { return d_ <= 3; }
  operator int() const { return d_; }  // NOLINT: intentional

 private:
  int d_;
};

void require_dimension(int d);
void require_pipeline_dimension(int d);

// Smooth transition: 1 for z <= lo, 0 for z >= hi.
struct CutoffSpec {
  double lo = 0.5;
  double hi = 1.0;
  int derivative_order = 8;

  void validate() const;
};

enum class KernelPart {
  full,
  fundamental,
  remainder,
  amplitude_w0,
  amplitude_w1,
  large_arg_phi,
  spectral_measure_j,
};

const char* to_string(KernelPart part);
KernelPart kernel_part_from_string(const std::string& name);

// (4 pi)^{-(d-1)/2}, the prefactor of the odd-dimensional closed form.
double odd_dimension_prefactor(int d);

// c^{+-} = +-i/4 - gamma/(2 pi) + log(2)/(2 pi).
cplx d2_constant(Sign s);

cplx free_kernel(int d, Sign s, double lambda, double r);

// The lambda -> 0 limit of the kernel (d >= 3); -r/2 (d=1); -log(r)/(2 pi)
// (d=2).
double fundamental_kernel(int d, double r);

// R0^+ - R0^-; finite at r = 0 in every dimension.
cplx spectral_measure_kernel(int d, double lambda, double r);

// Kernel minus its low-energy leading terms.
cplx remainder(int d, Sign s, double lambda, double r);

// k-th derivative of the cutoff at z (k = 0 gives the value).
double smooth_cutoff(const CutoffSpec& spec, double z, int k);

// Values of derivatives 0..k at z in one pass.
std::vector<double> smooth_cutoff_derivatives(const CutoffSpec& spec, double z,
                                              int k);

// Amplitudes of the oscillatory factorizations, with z = lambda r and
//   R = lambda^{d-2} e^{+-iz} z^{-(d-1)/2} Phi(z)
//     = lambda^{d-2} e^{+-iz} [z^{-(d-1)/2} w0(z) + z^{2-d} w1(z)],
//   R^+ - R^- = lambda^{d-2} z^{-(d-1)/2} [e^{iz} J^+(z) + e^{-iz} J^-(z)].
// w1 carries the small-argument piece cut by eta = cutoff on [1/2, 1].
cplx amplitude(KernelPart part, int d, Sign s, double z);

// Evaluate one kernel part on a radial grid (used for dumps).
std::vector<cplx> kernel_part_values(KernelPart part, int d, Sign s,
                                     double lambda,
                                     const std::vector<double>& r_grid);

}  // namespace rkwave

#endif  // RKWAVE_RESOLVENT_HPP_
