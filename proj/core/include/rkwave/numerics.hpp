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

// Small numerical utilities shared across modules.

#ifndef RKWAVE_NUMERICS_HPP_
#define RKWAVE_NUMERICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "rkwave/common.hpp"

namespace rkwave {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares y ~ intercept + slope x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Polynomial extrapolation of samples (h_k, v_k) to h = 0.  Returns the
// extrapolant built from all points and an error estimate from the
// difference with the one built from all but the first point.
struct Extrapolation {
  cplx value;
  double error;
};
Extrapolation extrapolate_to_zero(const std::vector<double>& h,
                                  const std::vector<cplx>& v);

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

// Fornberg finite-difference weights for the k-th derivative at x0 using
// the given stencil points.
std::vector<double> fd_weights(double x0, const std::vector<double>& pts,
                               int k);

// Chebyshev interpolant on [a, b] with n Chebyshev-Lobatto nodes.
class ChebPanel {
 public:
  ChebPanel() = default;
  ChebPanel(double a, double b, std::vector<double> values);

  static std::vector<double> nodes(double a, double b, int n);

  double operator()(double x) const;
  double a() const { return a_; }
  double b() const { return b_; }
  // Magnitude of the two highest Chebyshev coefficients.
  double tail() const { return tail_; }
  double scale() const { return scale_; }

 private:
  double a_ = 0.0;
  double b_ = 1.0;
  std::vector<double> x_;
  std::vector<double> f_;
  double tail_ = 0.0;
  double scale_ = 0.0;
};

// Piecewise Chebyshev table on [a, b] with adaptive panel splitting.
class PiecewiseCheb {
 public:
  PiecewiseCheb() = default;

  // Builds panels between consecutive breakpoints, splitting each until the
  // coefficient tail is below tol (absolute).
  template <class F>
  static PiecewiseCheb build(F&& f, std::vector<double> breaks, double tol,
                             int nodes_per_panel = 24, double max_width = 0.5,
                             int max_panels = 4000);

  double operator()(double x) const;
  double lo() const { return panels_.empty() ? 0.0 : panels_.front().a(); }
  double hi() const { return panels_.empty() ? 0.0 : panels_.back().b(); }
  std::vector<double> breakpoints() const;
  std::size_t panel_count() const { return panels_.size(); }
  double max_tail() const;

 private:
  std::vector<ChebPanel> panels_;
};

template <class F>
PiecewiseCheb PiecewiseCheb::build(F&& f, std::vector<double> breaks,
                                   double tol, int nodes_per_panel,
                                   double max_width, int max_panels) {
  PiecewiseCheb out;
  std::vector<std::pair<double, double>> todo;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    if (!(b > a)) continue;
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
    for (int p = 0; p < pieces; ++p) {
      todo.emplace_back(a + (b - a) * p / pieces, a + (b - a) * (p + 1) / pieces);
    }
  }
  // depth-first, keep left-to-right order
  std::vector<std::pair<double, double>> stack(todo.rbegin(), todo.rend());
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const auto xs = ChebPanel::nodes(a, b, nodes_per_panel);
    std::vector<double> vals(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) vals[i] = f(xs[i]);
    ChebPanel panel(a, b, std::move(vals));
    const bool too_many =
        static_cast<int>(out.panels_.size() + stack.size()) >= max_panels;
    if (panel.tail() > tol && (b - a) > 1e-6 && !too_many) {
      const double m = 0.5 * (a + b);
      stack.emplace_back(m, b);
      stack.emplace_back(a, m);
      continue;
    }
    out.panels_.push_back(std::move(panel));
  }
  return out;
}

}  // namespace rkwave

#endif  // RKWAVE_NUMERICS_HPP_
