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

// Truncated Taylor series arithmetic, used for exact derivatives of
// compositions of elementary functions.

#ifndef RKWAVE_SRC_JET_HPP_
#define RKWAVE_SRC_JET_HPP_

#include <cmath>
#include <vector>

namespace rkwave::detail {

// c[k] = f^(k)(t0) / k!
class Jet {
 public:
  Jet(int order, double value) : c_(order + 1, 0.0) { c_[0] = value; }

  static Jet variable(int order, double t0) {
    Jet j(order, t0);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }

  // k-th derivative at the expansion point.
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c_[k] * f;
  }

  friend Jet operator+(Jet a, const Jet& b) {
    for (int k = 0; k <= a.order(); ++k) a.c_[k] += b.c_[k];
    return a;
  }
  friend Jet operator-(Jet a, const Jet& b) {
    for (int k = 0; k <= a.order(); ++k) a.c_[k] -= b.c_[k];
    return a;
  }
  friend Jet operator-(double s, const Jet& b) {
    Jet r = b;
    for (auto& v : r.c_) v = -v;
    r.c_[0] += s;
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.order(), 0.0);
    for (int k = 0; k <= a.order(); ++k) {
      double s = 0.0;
      for (int i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
      r.c_[k] = s;
    }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r(a.order(), 0.0);
    for (int k = 0; k <= a.order(); ++k) {
      double s = a.c_[k];
      for (int i = 1; i <= k; ++i) s -= b.c_[i] * r.c_[k - i];
      r.c_[k] = s / b.c_[0];
    }
    return r;
  }

  friend Jet exp(const Jet& a) {
    Jet r(a.order(), std::exp(a.c_[0]));
    for (int k = 1; k <= a.order(); ++k) {
      double s = 0.0;
      for (int i = 1; i <= k; ++i) s += i * a.c_[i] * r.c_[k - i];
      r.c_[k] = s / k;
    }
    return r;
  }

 private:
  std::vector<double> c_;
};

}  // namespace rkwave::detail

#endif  // RKWAVE_SRC_JET_HPP_
