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

#include "rkwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rkwave/errors.hpp"
#include "rkwave/numerics.hpp"
#include "rkwave/parallel.hpp"
#include "rkwave/resolvent.hpp"

namespace rkwave {

cplx f_entry(const PotentialProfile& phi_i, const PotentialProfile& phi_j,
             Sign sign, double lambda, const QuadConfig& cfg) {
  if (phi_i.dim() != phi_j.dim()) {
    throw DomainError("f_entry needs profiles of one dimension");
  }
  if (!(lambda > 0.0)) throw DomainError("f_entry needs lambda > 0");
  const auto m = CorrelationTable::build(phi_i, phi_j);
  return singular_double_integral(KernelTag::free_kernel, m, sign, lambda, cfg)
      .value;
}

Eigen::MatrixXcd build_A(const Eigen::MatrixXcd& f, double alpha) {
  const Eigen::Index n = f.rows();
  return Eigen::MatrixXcd::Identity(n, n) + alpha * f.transpose();
}

Eigen::MatrixXcd build_A(const PerturbationModel& model, Sign sign,
                         double lambda, const QuadConfig& cfg) {
  return build_A(model.F(sign, lambda, cfg), model.alpha());
}

Eigen::MatrixXcd invert_G(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DomainError("invert_G needs a non-empty square matrix");
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const double det = std::abs(lu.determinant());
  if (!(det > 1e-12)) {
    throw ConditioningError("A is numerically singular", det);
  }
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd g = lu.inverse();
  double res = (g * a - eye).cwiseAbs().maxCoeff();
  if (res >= 1e-10) {
    g += g * (eye - a * g);  // one refinement step
    res = (g * a - eye).cwiseAbs().maxCoeff();
  }
  if (res >= 1e-10) {
    throw ConditioningError("inverse residual above 1e-10", det);
  }
  return g;
}

Eigen::MatrixXcd effective_G(const PerturbationModel& model, Sign sign,
                             double lambda, const QuadConfig& cfg) {
  const int n = model.size();
  if (model.alpha() == 0.0) return Eigen::MatrixXcd::Zero(n, n);
  return model.alpha() * invert_G(build_A(model, sign, lambda, cfg));
}

cplx g_alpha(double alpha, cplx f_plus) {
  const cplx den = 1.0 + alpha * f_plus;
  if (!(std::abs(den) > 1e-12)) {
    throw ConditionViolation("spectral condition violated: |1 + alpha F^+| <= 1e-12",
                             std::abs(den));
  }
  return alpha / den;
}

cplx g_alpha(const PerturbationModel& model, double lambda,
             const QuadConfig& cfg) {
  if (!model.is_rank_one()) throw DomainError("g_alpha is for rank-one models");
  return g_alpha(model.alpha(), model.F(Sign::plus, lambda, cfg)(0, 0));
}

SpectralCurve spectral_condition_scan(const PerturbationModel& model,
                                      const std::vector<double>& lambdas,
                                      double c0_target, const QuadConfig& cfg,
                                      int workers) {
  if (lambdas.size() < 2) throw DomainError("scan grid needs >= 2 points");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0) || (i && !(lambdas[i] > lambdas[i - 1]))) {
      throw DomainError("scan grid must be positive and increasing");
    }
  }
  if (lambdas.front() > 0.1 || lambdas.back() < 10.0) {
    throw DomainError("scan grid must reach below lambda0 = 0.1 and up to >= 10");
  }
  const std::size_t n = lambdas.size();
  const int N = model.size();
  SpectralCurve c;
  c.lambdas = lambdas;
  c.c0_target = c0_target;
  c.F_plus.assign(n, Eigen::MatrixXcd::Zero(N, N));
  c.F_minus = c.A_plus = c.G_plus = c.F_plus;
  c.abs_det.assign(n, std::numeric_limits<double>::quiet_NaN());
  c.failures.assign(n, "");
  c.jump_flags.assign(n, false);
  // Build correlation tables up front so workers only read them.
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j <= i; ++j) model.correlation(i, j);
  }
  parallel_for(n, workers, [&](std::size_t i) {
    try {
      const auto f = model.F(Sign::plus, lambdas[i], cfg);
      c.F_plus[i] = f;
      c.F_minus[i] = f.conjugate();
      c.A_plus[i] = build_A(f, model.alpha());
      c.abs_det[i] = std::abs(c.A_plus[i].determinant());
      c.G_plus[i] = model.alpha() * invert_G(c.A_plus[i]);
    } catch (const Error& e) {
      c.failures[i] = e.what();
    }
  });
  c.det_margin = std::numeric_limits<double>::infinity();
  bool all_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isfinite(c.abs_det[i])) {
      c.det_margin = std::min(c.det_margin, c.abs_det[i]);
    }
    if (!c.failures[i].empty()) all_ok = false;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double a = c.abs_det[i - 1], b = c.abs_det[i], d = c.abs_det[i + 1];
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(d)) continue;
    const double t = (lambdas[i] - lambdas[i - 1]) / (lambdas[i + 1] - lambdas[i - 1]);
    const double predicted = a + t * (d - a);
    const double scale = std::fabs(d - a) + 1e-12 * std::max(1.0, std::fabs(b));
    c.jump_flags[i] = std::fabs(b - predicted) > 10.0 * scale;
  }
  c.pass = all_ok && c.det_margin >= c0_target;
  if (lambdas.back() >= 50.0) {
    const auto he = high_energy_decay_check(c);
    c.has_high_energy_check = true;
    c.high_energy_f_slope = he.f_slope;
    c.high_energy_g_slope = he.g_slope;
    c.high_energy_pass = he.pass;
  }
  return c;
}

double a0_coefficient(const PotentialProfile& phi, const QuadConfig& cfg) {
  const int d = phi.dim();
  if (d != 3 && d != 5 && d != 7) throw DomainError("a0 needs d in {3,5,7}");
  const auto m = CorrelationTable::build(phi, phi);
  const double a0 =
      singular_double_integral(KernelTag::fundamental, m, Sign::plus, 1.0, cfg)
          .value.real();
  if (!(a0 > 0.0)) throw NumericError("a0 is not positive");
  return a0;
}

double b1_coefficient(const PotentialProfile& phi, const QuadConfig& cfg) {
  const int d = phi.dim();
  if (d != 1 && d != 2) throw DomainError("b1 needs d in {1,2}");
  const auto m = CorrelationTable::build(phi, phi);
  return singular_double_integral(KernelTag::fundamental, m, Sign::plus, 1.0, cfg)
      .value.real();
}

const char* to_string(LowEnergyLaw law) {
  switch (law) {
    case LowEnergyLaw::constant_d3: return "constant_d3";
    case LowEnergyLaw::inverse_lambda_d1: return "inverse_lambda_d1";
    case LowEnergyLaw::log_lambda_d2: return "log_lambda_d2";
  }
  return "?";
}

namespace {

cplx f11(const PerturbationModel& m, KernelFamily fam, Sign s, double lambda,
         const QuadConfig& cfg) {
  return m.pair_matrix(fam, s, lambda, cfg)(0, 0);
}

std::vector<double> default_grid(double lambda0) {
  std::vector<double> g;
  for (int k = 10; k >= 0; --k) g.push_back(lambda0 * std::ldexp(1.0, -k));
  return g;
}

std::vector<double> richardson_grid(double lambda0) {
  std::vector<double> g;
  for (int k = 4; k <= 10; ++k) g.push_back(lambda0 * std::ldexp(1.0, -k));
  return g;
}

}  // namespace

double select_lambda0(const PerturbationModel& model, const QuadConfig& cfg) {
  double lambda0 = 0.1;
  for (int halving = 0; halving <= 6; ++halving) {
    double worst = 0.0;
    for (double l : default_grid(lambda0)) {
      const cplx full = f11(model, KernelFamily::full, Sign::plus, l, cfg);
      const cplx rem = f11(model, KernelFamily::remainder, Sign::plus, l, cfg);
      const double lead = std::abs(full - rem);
      worst = std::max(worst, lead > 0.0 ? std::abs(rem) / lead
                                         : std::numeric_limits<double>::infinity());
    }
    if (worst < 0.2 || halving == 6) return lambda0;
    lambda0 *= 0.5;
  }
  return lambda0;
}

LowEnergyFit low_energy_fit(const PerturbationModel& model, Sign sign,
                            std::vector<double> fit_grid,
                            const QuadConfig& cfg, double lambda0) {
  const int d = model.dim();
  LowEnergyFit out;
  out.law = d == 1   ? LowEnergyLaw::inverse_lambda_d1
            : d == 2 ? LowEnergyLaw::log_lambda_d2
                     : LowEnergyLaw::constant_d3;
  if (!(lambda0 > 0.0)) lambda0 = select_lambda0(model, cfg);
  out.lambda0_used = lambda0;
  if (fit_grid.empty()) fit_grid = default_grid(lambda0);
  std::sort(fit_grid.begin(), fit_grid.end());
  if (!(fit_grid.front() > 0.0) || fit_grid.back() > lambda0 * (1.0 + 1e-12)) {
    throw DomainError("low-energy fit grid must lie in (0, lambda0]");
  }
  if (fit_grid.back() / fit_grid.front() < 100.0 * (1.0 - 1e-12)) {
    throw DomainError("low-energy fit grid must span two decades");
  }

  const auto hs = richardson_grid(lambda0);
  std::vector<cplx> fv;
  for (double l : hs) fv.push_back(f11(model, KernelFamily::full, sign, l, cfg));
  const double mass1 = model.masses()[0];

  if (d == 1) {
    std::vector<cplx> v;
    for (std::size_t k = 0; k < hs.size(); ++k) v.push_back(hs[k] * fv[k]);
    const auto lead = extrapolate_to_zero(hs, v);
    out.leading = lead.value;
    out.leading_error = lead.error;
    std::vector<cplx> s;
    for (std::size_t k = 0; k < hs.size(); ++k) {
      s.push_back(fv[k] - out.leading / hs[k]);
    }
    out.secondary = extrapolate_to_zero(hs, s).value;
  } else if (d == 2) {
    std::vector<double> h;
    std::vector<cplx> v;
    for (std::size_t k = 0; k + 1 < hs.size(); ++k) {
      // F(lambda) - F(lambda/2) = -L log 2 + o(1)
      h.push_back(hs[k]);
      v.push_back((fv[k + 1] - fv[k]) / std::log(2.0));
    }
    const auto lead = extrapolate_to_zero(h, v);
    out.leading = lead.value;
    out.leading_error = lead.error;
    std::vector<cplx> s;
    for (std::size_t k = 0; k < hs.size(); ++k) {
      s.push_back(fv[k] + out.leading * std::log(hs[k]));
    }
    out.secondary =
        extrapolate_to_zero(hs, s).value - d2_constant(sign) * mass1 * mass1;
  } else {
    const auto lead = extrapolate_to_zero(hs, fv);
    out.leading = lead.value;
    out.leading_error = lead.error;
    std::vector<cplx> s;
    for (std::size_t k = 0; k < hs.size(); ++k) {
      s.push_back((fv[k] - out.leading) / hs[k]);
    }
    out.secondary = extrapolate_to_zero(hs, s).value;
  }

  std::vector<double> lx, ly;
  for (double l : fit_grid) {
    const double r = std::abs(f11(model, KernelFamily::remainder, sign, l, cfg));
    out.lambdas.push_back(l);
    out.remainder_abs.push_back(r);
    if (r > 0.0) {
      lx.push_back(std::log(l));
      ly.push_back(std::log(r));
    }
  }
  if (lx.size() >= 2) {
    const auto fit = fit_line(lx, ly);
    out.remainder_slope = fit.slope;
    out.fit_r2 = fit.r2;
  }
  out.accepted = out.fit_r2 > 0.98;
  return out;
}

PerturbationModel orthonormalize_psi(const PerturbationModel& model) {
  const int n = model.size();
  const Eigen::VectorXd m = model.masses();
  const double sigma = m.norm();
  if (!(sigma > 1e-10)) return model;
  Eigen::MatrixXd rows(n, n);
  rows.row(0) = (m / sigma).transpose();
  // Complete with the standard basis, dropping the axis most aligned with m.
  int drop = 0;
  for (int j = 1; j < n; ++j) {
    if (std::fabs(m[j]) > std::fabs(m[drop])) drop = j;
  }
  int filled = 1;
  for (int j = 0; j < n; ++j) {
    if (j == drop) continue;
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < filled; ++k) {
        v -= rows.row(k).dot(v) * rows.row(k).transpose();
      }
    }
    rows.row(filled++) = (v / v.norm()).transpose();
  }
  return model.with_mixing(rows * model.mixing());
}

G11Leading g11_leading(const PerturbationModel& model, Sign sign,
                       const QuadConfig& cfg, double lambda0) {
  const int d = model.dim();
  if (d != 1 && d != 2) throw DomainError("g11_leading needs d in {1,2}");
  if (model.k0() != 1 || std::fabs(model.masses()[0]) <= 1e-10) {
    throw DomainError("g11_leading needs k0 = 1 with the mass on psi_1");
  }
  G11Leading out;
  out.lambdas = richardson_grid(lambda0);
  const int n = model.size();
  for (double l : out.lambdas) {
    const auto g = invert_G(build_A(model, sign, l, cfg));
    out.g11.push_back(g(0, 0));
    double off = 0.0;
    for (int j = 1; j < n; ++j) off = std::max(off, std::abs(g(0, j)));
    out.off_diagonal.push_back(off);
  }
  if (d == 1) {
    std::vector<cplx> v;
    for (std::size_t k = 0; k < out.lambdas.size(); ++k) {
      v.push_back(out.g11[k] / out.lambdas[k]);
    }
    const auto e = extrapolate_to_zero(out.lambdas, v);
    out.value = e.value;
    out.error = e.error;
  } else {
    // 1 / (g11 log lambda) is affine in t = 1 / log lambda up to O(lambda^2).
    std::vector<double> t;
    std::vector<cplx> w;
    for (std::size_t k = 0; k < out.lambdas.size(); ++k) {
      const double lg = std::log(out.lambdas[k]);
      t.push_back(1.0 / lg);
      w.push_back(1.0 / (out.g11[k] * lg));
    }
    const auto e = extrapolate_to_zero(t, w);
    out.value = 1.0 / e.value;
    out.error = e.error / std::norm(e.value);
  }
  if (!(out.error <= 1e-2 * std::abs(out.value))) {
    throw NonConvergence("g11 extraction is not Cauchy along the lambda sequence");
  }
  return out;
}

HighEnergyReport high_energy_decay_check(const SpectralCurve& curve) {
  HighEnergyReport rep;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < curve.lambdas.size(); ++i) {
    const bool ok = i >= curve.failures.size() || curve.failures[i].empty();
    if (curve.lambdas[i] >= 1.0 && ok) idx.push_back(i);
  }
  rep.points = static_cast<int>(idx.size());
  if (idx.size() < 3) return rep;
  std::vector<double> lx, ly;
  for (std::size_t i : idx) {
    const double f = curve.F_plus[i].cwiseAbs().maxCoeff();
    if (f > 0.0) {
      lx.push_back(std::log(curve.lambdas[i]));
      ly.push_back(std::log(f));
    }
  }
  if (lx.size() >= 2) {
    const auto fit = fit_line(lx, ly);
    rep.f_slope = fit.slope;
    rep.f_r2 = fit.r2;
  }
  lx.clear();
  ly.clear();
  bool any = false;
  for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
    const std::size_t a = idx[k - 1], b = idx[k], c = idx[k + 1];
    const double h1 = curve.lambdas[b] - curve.lambdas[a];
    const double h2 = curve.lambdas[c] - curve.lambdas[b];
    // Second-order derivative on a non-uniform stencil.
    const Eigen::MatrixXcd dg =
        (-h2 / (h1 * (h1 + h2))) * curve.G_plus[a] +
        ((h2 - h1) / (h1 * h2)) * curve.G_plus[b] +
        (h1 / (h2 * (h1 + h2))) * curve.G_plus[c];
    const double m = dg.cwiseAbs().maxCoeff();
    if (m > 0.0) {
      any = true;
      lx.push_back(std::log(curve.lambdas[b]));
      ly.push_back(std::log(m));
    }
  }
  rep.g_identically_constant = !any;
  if (lx.size() >= 2) {
    const auto fit = fit_line(lx, ly);
    rep.g_slope = fit.slope;
    rep.g_r2 = fit.r2;
  }
  rep.pass = rep.f_slope <= -0.8 &&
             (rep.g_identically_constant || rep.g_slope <= -0.8);
  return rep;
}

}  // namespace rkwave
