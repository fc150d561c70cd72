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

#include "rkwave/tphi.hpp"

#include <algorithm>
#include <cmath>

#include "rkwave/errors.hpp"

namespace rkwave {

namespace {

// e^{-z} I_0(z) for z >= 0.
double scaled_i0(double z) {
  if (z <= 50.0) return std::exp(-z) * std::cyl_bessel_i(0.0, z);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term *= (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * z);
    sum += term;
  }
  return sum / std::sqrt(2.0 * kPi * z);
}

// Angular integral  int_0^{2 pi} p(|s e_1 - rho e_theta|) d theta.
class RingKernel {
 public:
  explicit RingKernel(const PotentialProfile& phi) : phi_(phi) {
    if (phi.dim() != 2) throw PreconditionError("tphi needs a d = 2 profile");
    gaussian_ = phi.kind() == ProfileKind::gaussian;
    if (gaussian_) {
      width_ = phi.params().at(0);
      peak_ = phi.radial(0.0);
    }
    reach_ = phi.support_radius();
  }

  double reach() const { return reach_; }

  double operator()(double s, double rho) const {
    if (gaussian_) {
      const double t = (s - rho) / width_;
      return 2.0 * kPi * peak_ * std::exp(-0.5 * t * t) *
             scaled_i0(s * rho / (width_ * width_));
    }
    static const QuadConfig q = [] {
      QuadConfig c;
      c.rel_tol = 1e-10;
      c.abs_tol = 1e-14;
      return c;
    }();
    auto fn = [&](double y1, double y2) {
      return phi_.radial(std::hypot(s - y1, y2));
    };
    if (rho == 0.0) return 2.0 * kPi * phi_.radial(s);
    return 2.0 * sphere_average(fn, rho, q) / rho;
  }

 private:
  const PotentialProfile& phi_;
  bool gaussian_ = false;
  double width_ = 1.0, peak_ = 0.0, reach_ = 0.0;
};

}  // namespace

cplx RadialField::at(double r) const {
  if (values.empty() || r >= outer()) return 0.0;
  const double u = r / step - 0.5;
  if (u <= 0.0) return values.front();
  const std::size_t k = static_cast<std::size_t>(u);
  if (k + 1 >= values.size()) return values.back();
  const double t = u - static_cast<double>(k);
  return (1.0 - t) * values[k] + t * values[k + 1];
}

double centered_pv(const std::function<double(double)>& fbar, double r,
                   double rmax, const QuadConfig& cfg) {
  if (!(r > 0.0) || !(rmax > 0.0)) {
    throw DomainError("centered_pv needs r > 0 and rmax > 0");
  }
  auto fn = [&](double rho) { return rho * fbar(rho) / (r * r - rho * rho); };
  return 2.0 * kPi * principal_value(fn, r, 0.0, rmax, cfg).value;
}

double centered_delta(const std::function<double(double, double)>& f,
                      double r, const QuadConfig& cfg) {
  return sphere_average(f, r, cfg);
}

RadialField centered_apply(const RadialField& g, const QuadConfig& cfg) {
  cfg.validate();
  const std::size_t n = g.values.size();
  if (n < 3) throw PreconditionError("centered_apply needs >= 3 samples");
  const double h = g.step;
  const double outer = g.outer();
  RadialField out;
  out.step = h;
  out.values.assign(n, 0.0);
  // PV int_0^R rho g(rho) / (r^2 - rho^2): subtract g(r), integrate the
  // bounded rest by the midpoint rule, add g(r) (1/2) log(r^2 / (R^2 - r^2)).
  for (std::size_t k = 0; k < n; ++k) {
    const double r = g.radius(k);
    const cplx gr = g.values[k];
    cplx acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const double rho = g.radius(j);
      acc += rho * (g.values[j] - gr) / (r * r - rho * rho);
    }
    // Removable point: limit -g'(r)/2.
    const cplx gl = k > 0 ? g.values[k - 1] : g.values[k];
    const cplx gh = k + 1 < n ? g.values[k + 1] : cplx(0.0);
    const double span = (k > 0 ? h : 0.0) + h;
    acc += -0.5 * (gh - gl) / span;
    acc *= h;
    acc += gr * 0.5 * std::log(r * r / (outer * outer - r * r));
    out.values[k] = -acc / (2.0 * kPi) + 0.25 * kI * gr;
  }
  return out;
}

RadialField radial_convolve(const PotentialProfile& phi, const RadialField& g) {
  const RingKernel ring(phi);
  const std::size_t n = g.values.size();
  const double h = g.step;
  const std::size_t window =
      static_cast<std::size_t>(std::ceil(ring.reach() / h)) + 2;
  RadialField out;
  out.step = h;
  out.values.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = g.radius(k);
    const std::size_t lo = k > window ? k - window : 0;
    const std::size_t hi = std::min(n, k + window + 1);
    cplx acc = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
      if (g.values[j] == cplx(0.0)) continue;
      const double rho = g.radius(j);
      acc += g.values[j] * rho * ring(s, rho);
    }
    out.values[k] = acc * h;
  }
  return out;
}

RadialField tphi_apply_radial(const PotentialProfile& phi, const RadialField& f,
                              const QuadConfig& cfg) {
  const RadialField g = radial_convolve(phi, f);
  const RadialField tg = centered_apply(g, cfg);
  return radial_convolve(phi, tg);
}

SampledField tphi_apply(const PotentialProfile& phi, const SampledField& f,
                        const QuadConfig& cfg) {
  if (f.dim() != 2 || phi.dim() != 2) {
    throw PreconditionError("tphi_apply needs d = 2");
  }
  f.validate();
  const auto& ax = f.axes();
  std::vector<double> c = phi.center();
  if (c.empty()) c = {0.0, 0.0};
  // Bilinear interpolant of f, zero off the grid.
  auto value = [&](double x, double y) -> cplx {
    const double u = (x - ax[0].origin) / ax[0].spacing;
    const double v = (y - ax[1].origin) / ax[1].spacing;
    if (u < 0.0 || v < 0.0 || u > ax[0].count - 1 || v > ax[1].count - 1) {
      return 0.0;
    }
    const int i = std::min(static_cast<int>(u), ax[0].count - 2);
    const int j = std::min(static_cast<int>(v), ax[1].count - 2);
    const double a = u - i, b = v - j;
    auto at = [&](int p, int q) {
      return f[static_cast<std::size_t>(p) * ax[1].count + q];
    };
    return (1 - a) * (1 - b) * at(i, j) + a * (1 - b) * at(i + 1, j) +
           (1 - a) * b * at(i, j + 1) + a * b * at(i + 1, j + 1);
  };
  double corner = 0.0;
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      const double x = ax[0].at(p ? ax[0].count - 1 : 0) - c[0];
      const double y = ax[1].at(q ? ax[1].count - 1 : 0) - c[1];
      corner = std::max(corner, std::hypot(x, y));
    }
  }
  const double step = 0.5 * std::min(ax[0].spacing, ax[1].spacing);
  const double outer = corner + 3.0 * phi.support_radius() + step;
  const std::size_t n = static_cast<std::size_t>(std::ceil(outer / step));
  QuadConfig avg = cfg;
  avg.rel_tol = std::max(cfg.rel_tol, 1e-6);
  RadialField fbar;
  fbar.step = step;
  fbar.values.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = fbar.radius(k);
    if (r > corner) break;
    auto re = [&](double x, double y) { return value(c[0] + x, c[1] + y).real(); };
    auto im = [&](double x, double y) { return value(c[0] + x, c[1] + y).imag(); };
    fbar.values[k] = cplx(centered_delta(re, r, avg), centered_delta(im, r, avg)) / kPi;
  }
  const RadialField out = tphi_apply_radial(phi, fbar, cfg);
  SampledField res = SampledField::zeros(ax);
  double x[2];
  for (std::size_t i = 0; i < res.size(); ++i) {
    res.point(i, x);
    res[i] = out.at(std::hypot(x[0] - c[0], x[1] - c[1]));
  }
  return res;
}

TphiFamilyReport tphi_ring_family(const PotentialProfile& phi,
                                  const std::vector<double>& radii,
                                  const QuadConfig& cfg, double step) {
  TphiFamilyReport rep;
  for (double t : radii) {
    if (!(t > 0.0)) throw PreconditionError("ring radii must be positive");
    const double outer = 2.0 * t + 20.0;
    const std::size_t n = static_cast<std::size_t>(std::ceil(outer / step));
    RadialField f;
    f.step = step;
    f.values.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      // Cell average of the ring indicator.
      const double a = k * step, b = a + step;
      const double overlap = std::max(0.0, std::min(b, t + 1.0) - std::max(a, t));
      f.values[k] = overlap / step;
    }
    const RadialField out = tphi_apply_radial(phi, f, cfg);
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = 2.0 * kPi * f.radius(k) * step;
    const auto no = weighted_norms(out.values, w, {1.0});
    const auto nf = weighted_norms(f.values, w, {1.0});
    rep.radii.push_back(t);
    rep.l1_ratio.push_back(no.lp[0] / nf.lp[0]);
    rep.weak_l1_ratio.push_back(no.weak_l1 / nf.lp[0]);
  }
  if (!rep.radii.empty()) {
    const auto [lo, hi] =
        std::minmax_element(rep.weak_l1_ratio.begin(), rep.weak_l1_ratio.end());
    rep.weak_max_over_min = *hi / *lo;
    rep.l1_monotone = true;
    for (std::size_t k = 1; k < rep.l1_ratio.size(); ++k) {
      if (!(rep.l1_ratio[k] > rep.l1_ratio[k - 1])) rep.l1_monotone = false;
    }
  }
  return rep;
}

}  // namespace rkwave
