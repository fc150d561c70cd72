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

#include "rkwave/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "rkwave/errors.hpp"

namespace rkwave {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) {
    throw DomainError("fit_line needs at least two paired samples");
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

namespace {

cplx neville(const std::vector<double>& h, const std::vector<cplx>& v,
             std::size_t first) {
  std::vector<cplx> p(v.begin() + first, v.end());
  const std::size_t n = p.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      const double hi = h[first + i];
      const double hj = h[first + i + m];
      p[i] = (hj * p[i] - hi * p[i + 1]) / (hj - hi);
    }
  }
  return p[0];
}

}  // namespace

Extrapolation extrapolate_to_zero(const std::vector<double>& h,
                                  const std::vector<cplx>& v) {
  if (h.size() != v.size() || h.empty()) {
    throw DomainError("extrapolate_to_zero: mismatched samples");
  }
  if (h.size() == 1) return {v[0], std::abs(v[0])};
  const cplx full = neville(h, v, 0);
  const cplx drop = neville(h, v, 1);
  return {full, std::abs(full - drop)};
}

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 0 ? 1.0 : p1;
      dp = n * (x * pn - p0) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

std::vector<double> fd_weights(double x0, const std::vector<double>& pts,
                               int k) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(k + 1, 0.0));
  double c1 = 1.0;
  double c4 = pts[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, k);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = pts[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = pts[i] - pts[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int m = mn; m >= 1; --m) {
          c[i][m] = c1 * (m * c[i - 1][m - 1] - c5 * c[i - 1][m]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int m = mn; m >= 1; --m) {
        c[j][m] = (c4 * c[j][m] - m * c[j][m - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][k];
  return w;
}

std::vector<double> ChebPanel::nodes(double a, double b, int n) {
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) {
    x[j] = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(kPi * j / (n - 1));
  }
  return x;
}

ChebPanel::ChebPanel(double a, double b, std::vector<double> values)
    : a_(a), b_(b), f_(std::move(values)) {
  const int n = static_cast<int>(f_.size());
  x_ = nodes(a, b, n);
  scale_ = 0.0;
  for (double v : f_) scale_ = std::max(scale_, std::fabs(v));
  auto coeff = [&](int k) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      s += w * f_[j] * std::cos(kPi * j * k / (n - 1));
    }
    return 2.0 * s / (n - 1);
  };
  tail_ = std::fabs(coeff(n - 1)) * 0.5 + std::fabs(coeff(n - 2));
}

double ChebPanel::operator()(double x) const {
  const int n = static_cast<int>(f_.size());
  double num = 0.0, den = 0.0;
  for (int j = 0; j < n; ++j) {
    const double dx = x - x_[j];
    if (dx == 0.0) return f_[j];
    double w = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == n - 1) w *= 0.5;
    w /= dx;
    num += w * f_[j];
    den += w;
  }
  return num / den;
}

double PiecewiseCheb::operator()(double x) const {
  if (panels_.empty()) return 0.0;
  if (x <= panels_.front().a()) return panels_.front()(x);
  if (x >= panels_.back().b()) return panels_.back()(x);
  std::size_t lo = 0, hi = panels_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (panels_[mid].a() <= x) lo = mid;
    else hi = mid - 1;
  }
  return panels_[lo](x);
}

std::vector<double> PiecewiseCheb::breakpoints() const {
  std::vector<double> b;
  for (const auto& p : panels_) b.push_back(p.a());
  if (!panels_.empty()) b.push_back(panels_.back().b());
  return b;
}

double PiecewiseCheb::max_tail() const {
  double t = 0.0;
  for (const auto& p : panels_) t = std::max(t, p.tail());
  return t;
}

}  // namespace rkwave
