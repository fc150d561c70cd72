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

// Integration engine: adaptive Gauss-Kronrod, tanh-sinh, half-line
// oscillatory integrals with smooth cutoffs, principal values and circle
// averages.

#ifndef RKWAVE_QUADRATURE_HPP_
#define RKWAVE_QUADRATURE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "rkwave/common.hpp"
#include "rkwave/errors.hpp"
#include "rkwave/resolvent.hpp"

namespace rkwave {

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_panels = 4000;
  std::vector<double> pv_epsilons{1e-2, 1e-3, 1e-4};
  // |rho| * lambda above which phase-aware handling engages.
  double oscillation_threshold = 1.0;

  void validate() const;
  double target(double magnitude) const {
    return std::max(abs_tol, rel_tol * magnitude);
  }
};

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(cplx v) { return std::abs(v); }

// Throws QuadratureFailure when the estimate missed its tolerance.
template <class T>
const QuadResult<T>& require_converged(const QuadResult<T>& r,
                                       const std::string& what) {
  if (!r.converged) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", r.error);
    throw QuadratureFailure(what + ": quadrature error estimate " + buf +
                                " above tolerance",
                            r.error, magnitude(r.value));
  }
  return r;
}

namespace detail {

inline constexpr double kGkNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T, class F>
void gk15(F& f, double a, double b, T& value, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T k = fc * kKronrodWeights[7];
  T g = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kGkNodes[j];
    const T s = f(c - dx) + f(c + dx);
    k += s * kKronrodWeights[j];
    if (j % 2 == 1) g += s * kGaussWeights[j / 2];
  }
  value = k * h;
  err = magnitude((k - g) * h);
}

}  // namespace detail

// Globally adaptive G7/K15 on [a, b], optionally pre-split at breakpoints.
template <class T, class F>
QuadResult<T> integrate_gk(F&& f, double a, double b, const QuadConfig& cfg,
                           const std::vector<double>& breaks = {}) {
  QuadResult<T> res;
  if (a == b) return res;
  double sgn = 1.0;
  if (b < a) {
    std::swap(a, b);
    sgn = -1.0;
  }
  struct Piece {
    double a, b;
    T v;
    double e;
    bool operator<(const Piece& o) const { return e < o.e; }
  };
  std::priority_queue<Piece> heap;
  std::vector<double> pts{a};
  for (double x : breaks) {
    if (x > a && x < b) pts.push_back(x);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  T total{};
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Piece p{pts[i], pts[i + 1], T{}, 0.0};
    detail::gk15<T>(f, p.a, p.b, p.v, p.e);
    res.evaluations += 15;
    total += p.v;
    total_err += p.e;
    heap.push(p);
  }
  std::vector<Piece> frozen;
  while (!heap.empty()) {
    if (total_err <= cfg.target(magnitude(total))) break;
    if (static_cast<int>(heap.size() + frozen.size()) >= cfg.max_panels) break;
    Piece p = heap.top();
    heap.pop();
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b) || (p.b - p.a) < 1e-15 * std::max(1.0, std::fabs(m))) {
      frozen.push_back(p);
      continue;
    }
    Piece l{p.a, m, T{}, 0.0};
    Piece r{m, p.b, T{}, 0.0};
    detail::gk15<T>(f, l.a, l.b, l.v, l.e);
    detail::gk15<T>(f, r.a, r.b, r.v, r.e);
    res.evaluations += 30;
    total += l.v + r.v - p.v;
    total_err += l.e + r.e - p.e;
    heap.push(l);
    heap.push(r);
  }
  // Re-sum to shed drift from the running updates.
  total = T{};
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().v;
    total_err += heap.top().e;
    heap.pop();
  }
  for (const auto& p : frozen) {
    total += p.v;
    total_err += p.e;
  }
  res.value = total * sgn;
  res.error = total_err;
  res.converged = total_err <= cfg.target(magnitude(total)) * 1.0000001;
  return res;
}

// Double-exponential rule for integrands with endpoint singularities.
// f receives (x, distance to nearest endpoint) to allow accurate evaluation
// right next to a singular endpoint.
template <class T, class F>
QuadResult<T> integrate_tanh_sinh(F&& f, double a, double b,
                                  const QuadConfig& cfg, int max_level = 9) {
  QuadResult<T> res;
  if (a == b) return res;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double hpi = 0.5 * kPi;
  constexpr double kMaxT = 6.5;
  // Node pair at +-t: a + delta and b - delta with delta = half (1 - tanh u).
  auto pair = [&](double t, T& acc) {
    const double u = hpi * std::sinh(t);
    const double ch = std::cosh(u);
    const double delta = half / (std::exp(u) * ch);
    const double w = half * hpi * std::cosh(t) / (ch * ch);
    if (!(delta > 0.0) || !(w > 1e-300)) return false;
    const double xl = a + delta;
    const double xr = b - delta;
    // A node that rounds onto its endpoint is dropped on that side only.
    const bool left = xl > a;
    const bool right = xr < b;
    if (!left && !right) return false;
    if (left) {
      acc += f(xl, delta) * w;
      res.evaluations += 1;
    }
    if (right) {
      acc += f(xr, delta) * w;
      res.evaluations += 1;
    }
    return true;
  };
  double h = 1.0;
  T sum = f(mid, half) * (half * hpi);
  res.evaluations += 1;
  for (int k = 1; k * h <= kMaxT; ++k) {
    if (!pair(k * h, sum)) break;
  }
  T estimate = sum * h;
  double err = magnitude(estimate);
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    for (int k = 1; k * h <= kMaxT; k += 2) {
      if (!pair(k * h, sum)) break;
    }
    const T next = sum * h;
    err = magnitude(next - estimate);
    estimate = next;
    if (level >= 3 && err <= cfg.target(magnitude(estimate))) break;
  }
  res.value = estimate;
  res.error = err;
  res.converged = err <= cfg.target(magnitude(estimate));
  return res;
}

// Symbol data for  int_0^inf e^{i lambda rho} psi(lambda) chi(lambda) dlambda.
struct OscillatoryIntegrand {
  // psi(lambda, k) returns the k-th derivative; k = 0 must always work.
  std::function<cplx(double, int)> psi;
  double b = 0.0;
  int k_max = 2;
  CutoffSpec cutoff;
  // When false, derivatives of psi are taken by finite differences.
  bool analytic_derivatives = true;

  void validate() const;
};

QuadResult<cplx> oscillatory_halfline(const OscillatoryIntegrand& ig,
                                      double rho, const QuadConfig& cfg);

struct DecayFit {
  double slope = 0.0;
  double r2 = 0.0;
  int points_used = 0;
  std::vector<double> rho;
  std::vector<double> magnitude;
};

DecayFit decay_rate_probe(const OscillatoryIntegrand& ig,
                          const std::vector<double>& rho_grid,
                          const QuadConfig& cfg);

// Fits an exponent to given magnitudes (used for injected synthetic data).
DecayFit fit_decay(const std::vector<double>& rho,
                   const std::vector<double>& magnitude);

struct PvResult {
  double value = 0.0;
  double error = 0.0;
};

PvResult principal_value(const std::function<double(double)>& f,
                         double singularity, double a, double b,
                         const QuadConfig& cfg);

// (1/(2r)) times the circle integral of f over |y| = r.
double sphere_average(const std::function<double(double, double)>& f,
                      double radius, const QuadConfig& cfg);

}  // namespace rkwave

#endif  // RKWAVE_QUADRATURE_HPP_
