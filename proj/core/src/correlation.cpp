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

#include "rkwave/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "rkwave/errors.hpp"
#include "rkwave/resolvent.hpp"

namespace rkwave {

namespace {

double sphere_area(int d) {
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

QuadConfig inner_cfg() {
  QuadConfig q;
  q.abs_tol = 1e-15;
  q.rel_tol = 1e-12;
  q.max_panels = 2000;
  return q;
}

// Angular integral  |S^{d-2}| int_0^pi g(|rho w - s e|) sin^{d-2}(theta) dtheta
// restricted to the cap where the distance stays below reach.
template <class G>
double angular(int d, double rho, double s, double reach, G&& g) {
  if (rho == 0.0 || s == 0.0) {
    const double t = rho + s;
    return t <= reach ? sphere_area(d) * g(t) : 0.0;
  }
  const double c = (rho * rho + s * s - reach * reach) / (2.0 * rho * s);
  if (c >= 1.0) return 0.0;
  const double theta_max = c <= -1.0 ? kPi : std::acos(c);
  auto f = [&](double th) {
    const double t2 = rho * rho + s * s - 2.0 * rho * s * std::cos(th);
    double w = 1.0;
    for (int k = 0; k < d - 2; ++k) w *= std::sin(th);
    return g(std::sqrt(std::max(0.0, t2))) * w;
  };
  const double lower_area = d == 2 ? 2.0 : sphere_area(d - 1);
  return lower_area * integrate_gk<double>(f, 0.0, theta_max, inner_cfg()).value;
}

// C0(s) = int p_b(|x|) p_a(|x - s e|) dx for centered radial profiles.
double radial_correlation(const PotentialProfile& a, const PotentialProfile& b,
                          double s) {
  const int d = a.dim();
  const double ra = a.support_radius(), rb = b.support_radius();
  const double lo = std::max(0.0, s - ra);
  const double hi = std::min(rb, s + ra);
  if (!(hi > lo)) return 0.0;
  auto pa = [&](double t) { return a.radial(t); };
  auto f = [&](double rho) {
    return std::pow(rho, d - 1) * b.radial(rho) * angular(d, rho, s, ra, pa);
  };
  std::vector<double> br;
  for (double k : b.kinks()) br.push_back(k);
  if (b.kinks().size() <= 8) {
    for (double k : a.kinks()) {
      br.push_back(s + k);
      br.push_back(std::fabs(s - k));
    }
  }
  return integrate_gk<double>(f, lo, hi, inner_cfg(), br).value;
}

// C(u) = int b(x) a(x - u) dx in d = 1.
double line_correlation(const PotentialProfile& a, const PotentialProfile& b,
                        double u) {
  const double lo = std::max(b.support_lo(), a.support_lo() + u);
  const double hi = std::min(b.support_hi(), a.support_hi() + u);
  if (!(hi > lo)) return 0.0;
  std::vector<double> br = b.kinks();
  for (double k : a.kinks()) br.push_back(k + u);
  auto f = [&](double x) { return b.at(x) * a.at(x - u); };
  return integrate_gk<double>(f, lo, hi, inner_cfg(), br).value;
}

std::vector<double> kink_differences(const std::vector<double>& ka,
                                     const std::vector<double>& kb,
                                     bool radial) {
  std::vector<double> out;
  if (ka.size() > 8 || kb.size() > 8) return out;
  for (double x : ka) {
    for (double y : kb) {
      out.push_back(std::fabs(x - y));
      if (radial) out.push_back(x + y);
    }
  }
  return out;
}

}  // namespace

CorrelationTable CorrelationTable::build(const PotentialProfile& a,
                                         const PotentialProfile& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("correlation needs profiles of one dimension");
  }
  CorrelationTable t;
  const int d = a.dim();
  t.d_ = d;
  t.mass_product_ = a.mass() * b.mass();
  std::vector<double> breaks{0.0};
  if (d == 1) {
    t.r_max_ = std::max(b.support_hi() - a.support_lo(),
                        a.support_hi() - b.support_lo());
    t.r_max_ = std::max(t.r_max_, 0.0);
    t.overlap_ = line_correlation(a, b, 0.0);
    for (double k : kink_differences(a.kinks(), b.kinks(), false)) {
      breaks.push_back(k);
    }
    breaks.push_back(t.r_max_);
    std::sort(breaks.begin(), breaks.end());
    auto m = [&](double r) {
      return line_correlation(a, b, r) + line_correlation(a, b, -r);
    };
    t.table_ = PiecewiseCheb::build(m, breaks, 1e-13);
    return t;
  }

  double delta2 = 0.0;
  for (int i = 0; i < d; ++i) {
    const double c = b.center()[i] - a.center()[i];
    delta2 += c * c;
  }
  const double delta = std::sqrt(delta2);
  const double reach = a.support_radius() + b.support_radius();
  t.r_max_ = delta + reach;
  t.overlap_ = radial_correlation(a, b, delta);
  const double area = sphere_area(d);
  const double tol = 1e-13 * std::max(1.0, std::pow(t.r_max_, d - 1));
  for (double k : kink_differences(a.kinks(), b.kinks(), true)) {
    if (delta == 0.0) breaks.push_back(k);
  }
  if (delta == 0.0) {
    breaks.push_back(t.r_max_);
    std::sort(breaks.begin(), breaks.end());
    auto m = [&](double r) {
      return area * std::pow(r, d - 1) * radial_correlation(a, b, r);
    };
    t.table_ = PiecewiseCheb::build(m, breaks, tol);
    return t;
  }
  // Off-center pair: tabulate C0 first, then average over the sphere |u| = r
  // around the center offset.
  std::vector<double> cbreaks{0.0};
  for (double k : kink_differences(a.kinks(), b.kinks(), true)) {
    cbreaks.push_back(k);
  }
  cbreaks.push_back(reach);
  std::sort(cbreaks.begin(), cbreaks.end());
  const auto c0 = PiecewiseCheb::build(
      [&](double s) { return radial_correlation(a, b, s); }, cbreaks, 1e-14);
  auto c0f = [&](double s) { return s <= reach ? c0(s) : 0.0; };
  auto m = [&](double r) {
    return std::pow(r, d - 1) * angular(d, r, delta, reach, c0f);
  };
  breaks.push_back(std::max(0.0, delta - reach));
  breaks.push_back(delta);
  breaks.push_back(t.r_max_);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  t.table_ = PiecewiseCheb::build(m, breaks, tol);
  return t;
}

double CorrelationTable::operator()(double r) const {
  if (r < 0.0 || r > r_max_) return 0.0;
  return table_(r);
}

QuadResult<cplx> integrate_against(const CorrelationTable& m,
                                   const std::function<cplx(double)>& kernel,
                                   double omega, const QuadConfig& cfg) {
  std::vector<double> br = m.breakpoints();
  if (omega > 0.0) {
    const double period = 2.0 * kPi / omega;
    const double n = m.r_max() / period;
    const double step = n > 4000.0 ? m.r_max() / 4000.0 : period;
    for (double r = step; r < m.r_max(); r += step) br.push_back(r);
  }
  QuadConfig q = cfg;
  q.max_panels = std::max<int>(cfg.max_panels, 4 * br.size() + 64);
  auto f = [&](double r) { return kernel(r) * m(r); };
  return integrate_gk<cplx>(f, 0.0, m.r_max(), q, br);
}

const char* to_string(KernelTag tag) {
  switch (tag) {
    case KernelTag::free_kernel: return "free_kernel";
    case KernelTag::fundamental: return "fundamental";
    case KernelTag::log: return "log";
    case KernelTag::abs: return "abs";
  }
  return "?";
}

KernelTag kernel_tag_from_string(const std::string& name) {
  if (name == "free_kernel") return KernelTag::free_kernel;
  if (name == "fundamental") return KernelTag::fundamental;
  if (name == "log") return KernelTag::log;
  if (name == "abs") return KernelTag::abs;
  throw DomainError("unknown kernel tag '" + name + "'");
}

QuadResult<cplx> singular_double_integral(KernelTag tag,
                                          const CorrelationTable& m, Sign sign,
                                          double lambda, const QuadConfig& cfg) {
  const int d = m.dim();
  QuadResult<cplx> r;
  switch (tag) {
    case KernelTag::free_kernel:
      if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
      r = integrate_against(
          m, [&](double x) { return free_kernel(d, sign, lambda, x); }, lambda,
          cfg);
      break;
    case KernelTag::fundamental:
      r = integrate_against(
          m, [&](double x) { return cplx(fundamental_kernel(d, x), 0.0); }, 0.0,
          cfg);
      break;
    case KernelTag::log:
      r = integrate_against(
          m, [](double x) { return cplx(std::log(x), 0.0); }, 0.0, cfg);
      break;
    case KernelTag::abs:
      r = integrate_against(m, [](double x) { return cplx(x, 0.0); }, 0.0, cfg);
      break;
  }
  require_converged(r, std::string("singular_double_integral(") +
                           to_string(tag) + ")");
  return r;
}

QuadResult<cplx> singular_double_integral(KernelTag tag,
                                          const PotentialProfile& a,
                                          const PotentialProfile& b,
                                          Sign sign, double lambda,
                                          const QuadConfig& cfg) {
  return singular_double_integral(tag, CorrelationTable::build(a, b), sign,
                                  lambda, cfg);
}

double inner_product(const PotentialProfile& a, const PotentialProfile& b) {
  if (a.dim() != b.dim()) throw DomainError("inner product across dimensions");
  if (a.dim() == 1) return line_correlation(a, b, 0.0);
  double delta2 = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double c = b.center()[i] - a.center()[i];
    delta2 += c * c;
  }
  return radial_correlation(a, b, std::sqrt(delta2));
}

}  // namespace rkwave
