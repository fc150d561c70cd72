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

#ifndef RKWAVE_COMMON_HPP_
#define RKWAVE_COMMON_HPP_

#include <complex>
#include <numbers>

namespace rkwave {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kE = std::numbers::e;
inline constexpr cplx kI{0.0, 1.0};

// Euler-Mascheroni constant to 20 digits.
inline constexpr long double kEulerGammaL = 0.57721566490153286061L;
inline constexpr double kEulerGamma = static_cast<double>(kEulerGammaL);

// Boundary value selector: +1 for lambda^2 + i0, -1 for lambda^2 - i0.
enum class Sign : int { plus = 1, minus = -1 };

inline constexpr double sign_value(Sign s) {
  return s == Sign::plus ? 1.0 : -1.0;
}

inline constexpr Sign flip(Sign s) {
  return s == Sign::plus ? Sign::minus : Sign::plus;
}

}  // namespace rkwave

#endif  // RKWAVE_COMMON_HPP_
