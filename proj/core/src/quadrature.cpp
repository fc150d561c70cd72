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

#include "rkwave/quadrature.hpp"

#include <cmath>
#include <string>

#include "rkwave/numerics.hpp"

namespace rkwave {

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_panels < 1) throw DomainError("max_panels must be >= 1");
  for (std::size_t i = 0; i < pv_epsilons.size(); ++i) {
    if (!(pv_epsilons[i] > 0.0) ||
        (i > 0 && !(pv_epsilons[i] < pv_epsilons[i - 1]))) {
      throw DomainError("pv_epsilons must be positive and strictly decreasing");
    }
  }
  if (pv_epsilons.size() < 2) {
    throw DomainError("pv_epsilons needs at least two entries");
  }
}

void OscillatoryIntegrand::validate() const {
  if (!psi) throw DomainError("oscillatory integrand has no symbol");
  if (!(b > -1.0)) throw DomainError("symbol class requires b > -1");
  if (!(k_max > b + 1.0)) {
    throw DomainError("symbol class requires k_max > b + 1");
  }
  cutoff.validate();
  if (cutoff.derivative_order < k_max) {
    throw DomainError("cutoff must provide at least k_max derivatives");
  }
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// k-th derivative of psi at x by central differences with step h.
cplx fd_derivative(const OscillatoryIntegrand& ig, double x, int k, double h) {
  const int m = k / 2 + 2;
  std::vector<double> pts;
  for (int j = -m; j <= m; ++j) pts.push_back(x + j * h);
  const auto w = fd_weights(x, pts, k);
  cplx s = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) s += w[j] * ig.psi(pts[j], 0);
  return s;
}

// k-th derivative of psi * chi; fd_err accumulates the step-halving spread.
cplx symbol_derivative(const OscillatoryIntegrand& ig, double x, int k,
                       double* fd_err) {
  const auto chi = smooth_cutoff_derivatives(ig.cutoff, x, k);
  cplx s = 0.0;
  for (int j = 0; j <= k; ++j) {
    if (chi[k - j] == 0.0) continue;
    cplx dpsi;
    if (j == 0 || ig.analytic_derivatives) {
      dpsi = ig.psi(x, j);
    } else {
      const double h = x / 32.0;
      dpsi = fd_derivative(ig, x, j, h);
      if (fd_err) {
        const cplx half = fd_derivative(ig, x, j, 0.5 * h);
        *fd_err += binomial(k, j) * std::abs(half - dpsi) * std::fabs(chi[k - j]);
        dpsi = half;
      }
    }
    s += binomial(k, j) * dpsi * chi[k - j];
  }
  return s;
}

}  // namespace

QuadResult<cplx> oscillatory_halfline(const OscillatoryIntegrand& ig,
                                      double rho, const QuadConfig& cfg) {
  ig.validate();
  cfg.validate();
  const double hi = ig.cutoff.hi;
  const double arho = std::fabs(rho);
  const double split =
      arho > 0.0 ? std::min(hi, cfg.oscillation_threshold / arho) : hi;

  auto near = [&](double x, double) {
    return std::exp(cplx(0.0, rho * x)) * ig.psi(x, 0) *
           smooth_cutoff(ig.cutoff, x, 0);
  };
  QuadResult<cplx> res = integrate_tanh_sinh<cplx>(near, 0.0, split, cfg, 10);
  if (split >= hi) return res;

  // Integrate by parts K times on [split, hi]; every derivative of the
  // symbol vanishes at hi, so only the left boundary contributes.
  const int K = ig.k_max;
  const cplx c = kI / rho;
  const cplx e_split = std::exp(cplx(0.0, rho * split));
  double fd_err = 0.0;
  cplx boundary = 0.0;
  cplx ck = c;
  for (int k = 0; k < K; ++k) {
    boundary += ck * e_split * symbol_derivative(ig, split, k, &fd_err);
    ck *= c;
  }
  const cplx cK = ck / c;  // c^K
  auto tail = [&](double x) {
    return std::exp(cplx(0.0, rho * x)) * symbol_derivative(ig, x, K, nullptr);
  };
  std::vector<double> breaks;
  const double period = 2.0 * kPi / arho;
  for (double x = split + period; x < hi; x += period) breaks.push_back(x);
  QuadConfig tail_cfg = cfg;
  tail_cfg.abs_tol = cfg.abs_tol / std::max(1.0, std::abs(cK));
  tail_cfg.max_panels = std::max<int>(cfg.max_panels, 4 * breaks.size() + 16);
  const auto rem = integrate_gk<cplx>(tail, split, hi, tail_cfg, breaks);
  res.value += boundary + cK * rem.value;
  res.error += std::abs(cK) * rem.error + fd_err;
  res.evaluations += rem.evaluations;
  res.converged = res.converged && rem.converged &&
                  res.error <= cfg.target(std::abs(res.value)) * 1.0000001;
  return res;
}

DecayFit fit_decay(const std::vector<double>& rho,
                   const std::vector<double>& mag) {
  std::vector<double> lx, ly;
  DecayFit out;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (mag[i] > 0.0 && std::isfinite(mag[i])) {
      lx.push_back(std::log(std::fabs(rho[i])));
      ly.push_back(std::log(mag[i]));
      out.rho.push_back(rho[i]);
      out.magnitude.push_back(mag[i]);
    }
  }
  if (lx.size() < 2) throw NonConvergence("decay fit needs two usable points");
  const auto f = fit_line(lx, ly);
  out.slope = f.slope;
  out.r2 = f.r2;
  out.points_used = static_cast<int>(lx.size());
  return out;
}

DecayFit decay_rate_probe(const OscillatoryIntegrand& ig,
                          const std::vector<double>& rho_grid,
                          const QuadConfig& cfg) {
  if (rho_grid.size() < 2) throw DomainError("decay probe needs >= 2 points");
  double lo = 1e300, hi = 0.0;
  for (double r : rho_grid) {
    if (!(std::fabs(r) > 1.0)) {
      throw DomainError("decay probe requires |rho| > 1 at every point");
    }
    lo = std::min(lo, std::fabs(r));
    hi = std::max(hi, std::fabs(r));
  }
  if (hi / lo < 100.0 * (1.0 - 1e-12)) {
    throw DomainError("decay probe grid must span at least two decades");
  }
  std::vector<double> ok_rho, ok_mag;
  for (double r : rho_grid) {
    try {
      const auto v = oscillatory_halfline(ig, r, cfg);
      if (!v.converged) continue;
      ok_rho.push_back(r);
      ok_mag.push_back(std::abs(v.value));
    } catch (const QuadratureFailure&) {
    }
  }
  if (ok_rho.size() < 0.8 * rho_grid.size()) {
    throw NonConvergence("decay probe: fewer than 80% of points converged");
  }
  return fit_decay(ok_rho, ok_mag);
}

PvResult principal_value(const std::function<double(double)>& f,
                         double singularity, double a, double b,
                         const QuadConfig& cfg) {
  cfg.validate();
  if (!(b > a)) throw DomainError("principal_value needs a < b");
  const double c = singularity;
  if (c <= a || c >= b) {
    const auto r = integrate_gk<double>(f, a, b, cfg);
    require_converged(r, "principal_value");
    return {r.value, r.error};
  }
  const double delta = std::min(c - a, b - c);
  double outer = 0.0, outer_err = 0.0;
  if (c - delta > a) {
    const auto r = integrate_gk<double>(f, a, c - delta, cfg);
    require_converged(r, "principal_value outer");
    outer += r.value;
    outer_err += r.error;
  }
  if (c + delta < b) {
    const auto r = integrate_gk<double>(f, c + delta, b, cfg);
    require_converged(r, "principal_value outer");
    outer += r.value;
    outer_err += r.error;
  }
  // The folded integrand f(c+t) + f(c-t) is bounded for a simple pole.
  auto fold = [&](double t) { return f(c + t) + f(c - t); };
  const double scale = std::min(1.0, delta / cfg.pv_epsilons.front());
  std::vector<double> eps;
  for (double e : cfg.pv_epsilons) eps.push_back(e * scale * 0.5);
  std::vector<cplx> partial;
  double upper = delta;
  double acc = outer;
  double qerr = outer_err;
  for (double e : eps) {
    const auto r = integrate_gk<double>(fold, e, upper, cfg);
    require_converged(r, "principal_value excision");
    acc += r.value;
    qerr += r.error;
    partial.emplace_back(acc, 0.0);
    upper = e;
  }
  const double d_first = std::fabs(partial[1].real() - partial[0].real());
  const double d_last = std::fabs(partial.back().real() -
                                  partial[partial.size() - 2].real());
  if (partial.size() >= 3 && d_last > d_first &&
      d_last > cfg.target(std::fabs(acc))) {
    throw PvDivergence("principal value: excision sequence is not Cauchy");
  }
  const auto ex = extrapolate_to_zero(eps, partial);
  return {ex.value.real(), ex.error + qerr};
}

double sphere_average(const std::function<double(double, double)>& f,
                      double radius, const QuadConfig& cfg) {
  if (!(radius > 0.0)) throw DomainError("sphere_average radius must be > 0");
  auto trap = [&](int m, int stride, int offset) {
    double s = 0.0;
    for (int j = offset; j < m; j += stride) {
      const double th = 2.0 * kPi * j / m;
      s += f(radius * std::cos(th), radius * std::sin(th));
    }
    return s;
  };
  int m = 16;
  double sum = trap(m, 1, 0);
  double prev = 2.0 * kPi * sum / m;
  for (int it = 0; it < 14; ++it) {
    sum += trap(2 * m, 2, 1);
    m *= 2;
    const double cur = 2.0 * kPi * sum / m;
    if (std::fabs(cur - prev) <= cfg.target(std::fabs(cur))) {
      return 0.5 * cur;
    }
    prev = cur;
  }
  return 0.5 * prev;
}

}  // namespace rkwave
