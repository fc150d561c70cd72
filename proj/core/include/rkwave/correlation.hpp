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

// Pair correlations M(r) = int int delta(|x - y| - r) phi_i(y) phi_j(x) dx dy.
// Any radial kernel K(|x - y|) then integrates against phi_i, phi_j as a
// single integral  int_0^inf K(r) M(r) dr.

#ifndef RKWAVE_CORRELATION_HPP_
#define RKWAVE_CORRELATION_HPP_

#include <functional>

#include "rkwave/numerics.hpp"
#include "rkwave/profile.hpp"
#include "rkwave/quadrature.hpp"

namespace rkwave {

class CorrelationTable {
 public:
  CorrelationTable() = default;
  static CorrelationTable build(const PotentialProfile& a,
                                const PotentialProfile& b);

  int dim() const { return d_; }
  double operator()(double r) const;
  double r_max() const { return r_max_; }
  std::vector<double> breakpoints() const { return table_.breakpoints(); }
  // <a, b>.
  double overlap() const { return overlap_; }
  // mass(a) * mass(b); equals the integral of M.
  double mass_product() const { return mass_product_; }
  double table_tail() const { return table_.max_tail(); }

 private:
  int d_ = 1;
  double r_max_ = 0.0;
  double overlap_ = 0.0;
  double mass_product_ = 0.0;
  PiecewiseCheb table_;
};

// int_0^r_max K(r) M(r) dr with breaks at the table panels and at every
// half period 2 pi / omega of an oscillating kernel (omega = 0: none).
QuadResult<cplx> integrate_against(const CorrelationTable& m,
                                   const std::function<cplx(double)>& kernel,
                                   double omega, const QuadConfig& cfg);

enum class KernelTag { free_kernel, fundamental, log, abs };

const char* to_string(KernelTag tag);
KernelTag kernel_tag_from_string(const std::string& name);

// int int K(|x - y|) phi_i(y) phi_j(x) dy dx for the given kernel:
// free_kernel = R_0^sign(lambda^2), fundamental = fundamental_kernel(d, .),
// log = log|x - y|, abs = |x - y|.
QuadResult<cplx> singular_double_integral(KernelTag tag,
                                          const PotentialProfile& a,
                                          const PotentialProfile& b,
                                          Sign sign, double lambda,
                                          const QuadConfig& cfg);
QuadResult<cplx> singular_double_integral(KernelTag tag,
                                          const CorrelationTable& m, Sign sign,
                                          double lambda, const QuadConfig& cfg);

// <a, b> by quadrature; centers may differ.
double inner_product(const PotentialProfile& a, const PotentialProfile& b);

}  // namespace rkwave

#endif  // RKWAVE_CORRELATION_HPP_
