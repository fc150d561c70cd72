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

// Bessel J/Y and Hankel functions of integer orders 0..3 and half-integer
// orders 1/2..7/2 on the positive real axis.

#ifndef RKWAVE_SPECFUN_HPP_
#define RKWAVE_SPECFUN_HPP_

#include "rkwave/common.hpp"

namespace rkwave {

// Order nu stored as 2*nu so integer and half-integer orders share a type.
class BesselOrder {
 public:
  static constexpr int kMaxTwice = 7;

  // Throws OrderRangeError unless 0 <= twice_order <= kMaxTwice.
  explicit BesselOrder(int twice_order);

  static BesselOrder integer(int n) { return BesselOrder(2 * n); }

  int twice() const { return twice_; }
  double value() const { return 0.5 * twice_; }
  bool is_integer() const { return twice_ % 2 == 0; }

 private:
  int twice_;
};

double bessel_j(BesselOrder order, double z);
double bessel_y(BesselOrder order, double z);

// J + iY for Sign::plus, J - iY for Sign::minus.
cplx hankel(Sign kind, BesselOrder order, double z);

// Derivatives via C'_nu = C_{nu-1} - (nu/z) C_nu.
double bessel_j_prime(BesselOrder order, double z);
double bessel_y_prime(BesselOrder order, double z);

namespace detail {

// Unchecked evaluators for 2*nu in [-1, 9]; z > 0 (z = 0 allowed for J).
double jv(int twice, double z);
double yv(int twice, double z);

// J_nu(z) / z^nu, entire in z; 2*nu in [-1, 9].
double j_over_pow(int twice, double z);

// J_0(z) - 1 without cancellation at small z.
double j0_minus_one(double z);

// Y_0(z) - (2/pi)(log(z/2) + gamma) J_0(z), a power series in z^2.
double y0_regular(double z);

}  // namespace detail

}  // namespace rkwave

#endif  // RKWAVE_SPECFUN_HPP_
