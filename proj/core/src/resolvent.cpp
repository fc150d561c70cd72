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

#include "rkwave/resolvent.hpp"

#include <array>
#include <cmath>
#include <string>

#include "jet.hpp"
#include "rkwave/errors.hpp"
#include "rkwave/specfun.hpp"

namespace rkwave {

namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("spectral parameter lambda must be positive and finite");
  }
}

void require_radius(int d, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError("distance r must be finite and >= 0");
  }
  if (d >= 2 && r == 0.0) {
    throw SingularityError("kernel is singular at r = 0 for d >= 2");
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Odd d >= 3: R0^+ = c_d e^{iz} r^{2-d} Q(z),
// Q(z) = sum_{k=0}^{m} (d-3-k)! / (k! (m-k)!) (-2iz)^k, m = (d-3)/2.
std::array<cplx, 3> odd_q_coefficients(int d) {
  const int m = (d - 3) / 2;
  std::array<cplx, 3> q{};
  cplx pw = 1.0;
  for (int k = 0; k <= m; ++k) {
    q[k] = factorial(d - 3 - k) / (factorial(k) * factorial(m - k)) * pw;
    pw *= cplx(0.0, -2.0);
  }
  return q;
}

cplx odd_kernel_plus(int d, double lambda, double r) {
  const double z = lambda * r;
  const auto q = odd_q_coefficients(d);
  const int m = (d - 3) / 2;
  cplx poly = 0.0;
  for (int k = m; k >= 0; --k) poly = poly * z + q[k];
  return odd_dimension_prefactor(d) * std::exp(cplx(0.0, z)) * poly /
         std::pow(r, d - 2);
}

// e^{iz} Q(z) - Q(0) without cancellation.
cplx odd_shifted(int d, double z) {
  const auto q = odd_q_coefficients(d);
  const int m = (d - 3) / 2;
  if (z >= 1.0) {
    cplx poly = 0.0;
    for (int k = m; k >= 0; --k) poly = poly * z + q[k];
    return std::exp(cplx(0.0, z)) * poly - q[0];
  }
  // p_n = sum_k q_k i^{n-k}/(n-k)!
  cplx sum = 0.0;
  double zn = 1.0;
  for (int n = 1; n < 40; ++n) {
    zn *= z;
    cplx pn = 0.0;
    for (int k = 0; k <= std::min(n, m); ++k) {
      pn += q[k] * std::pow(kI, n - k) / factorial(n - k);
    }
    const cplx add = pn * zn;
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

cplx conj_if_minus(Sign s, cplx v) { return s == Sign::plus ? v : std::conj(v); }

}  // namespace

Dimension::Dimension(int d) : d_(d) { require_dimension(d); }

void require_dimension(int d) {
  if (d != 1 && d != 2 && d != 3 && d != 5 && d != 7) {
    throw DomainError("dimension " + std::to_string(d) +
                      " not supported (allowed: 1, 2, 3, 5, 7)");
  }
}

void require_pipeline_dimension(int d) {
  if (d < 1 || d > 3) {
    throw DomainError("dimension " + std::to_string(d) +
                      " outside the wave-operator pipeline (1..3)");
  }
}

void CutoffSpec::validate() const {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw DomainError("cutoff requires 0 < lo < hi");
  }
  if (derivative_order < 0) {
    throw DomainError("cutoff derivative order must be >= 0");
  }
}

const char* to_string(KernelPart part) {
  switch (part) {
    case KernelPart::full: return "full";
    case KernelPart::fundamental: return "fundamental";
    case KernelPart::remainder: return "remainder";
    case KernelPart::amplitude_w0: return "amplitude_w0";
    case KernelPart::amplitude_w1: return "amplitude_w1";
    case KernelPart::large_arg_phi: return "large_arg_phi";
    case KernelPart::spectral_measure_j: return "spectral_measure_j";
  }
  return "?";
}

KernelPart kernel_part_from_string(const std::string& name) {
  for (KernelPart p :
       {KernelPart::full, KernelPart::fundamental, KernelPart::remainder,
        KernelPart::amplitude_w0, KernelPart::amplitude_w1,
        KernelPart::large_arg_phi, KernelPart::spectral_measure_j}) {
    if (name == to_string(p)) return p;
  }
  throw DomainError("unknown kernel part '" + name + "'");
}

double odd_dimension_prefactor(int d) {
  return std::pow(4.0 * kPi, -0.5 * (d - 1));
}

cplx d2_constant(Sign s) {
  return {(std::log(2.0) - kEulerGamma) / (2.0 * kPi), 0.25 * sign_value(s)};
}

cplx free_kernel(int d, Sign s, double lambda, double r) {
  require_dimension(d);
  require_lambda(lambda);
  require_radius(d, r);
  const double z = lambda * r;
  cplx plus;
  if (d == 1) {
    plus = cplx(0.0, 0.5 / lambda) * std::exp(cplx(0.0, z));
  } else if (d == 2) {
    plus = cplx(0.0, 0.25) * cplx(detail::jv(0, z), detail::yv(0, z));
  } else {
    plus = odd_kernel_plus(d, lambda, r);
  }
  return conj_if_minus(s, plus);
}

double fundamental_kernel(int d, double r) {
  require_dimension(d);
  require_radius(d, r);
  if (d == 1) return -0.5 * r;
  if (d == 2) return -std::log(r) / (2.0 * kPi);
  // Gamma(d/2 - 1) / (4 pi^{d/2}) r^{2-d}
  return std::tgamma(0.5 * d - 1.0) / (4.0 * std::pow(kPi, 0.5 * d)) *
         std::pow(r, 2 - d);
}

cplx spectral_measure_kernel(int d, double lambda, double r) {
  require_dimension(d);
  require_lambda(lambda);
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError("distance r must be finite and >= 0");
  }
  const double z = lambda * r;
  if (d == 1) return {0.0, std::cos(z) / lambda};
  if (d == 2) return {0.0, 0.5 * detail::jv(0, z)};
  if (d == 3) {
    // i sin(z) lambda / (2 pi z)
    const double sinc = z < 1e-4 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
    return {0.0, lambda * sinc / (2.0 * kPi)};
  }
  const int twice = d - 2;
  const double nu = 0.5 * twice;
  return {0.0, 0.5 * std::pow(lambda * lambda / (2.0 * kPi), nu) *
                   detail::j_over_pow(twice, z)};
}

cplx remainder(int d, Sign s, double lambda, double r) {
  require_dimension(d);
  require_lambda(lambda);
  require_radius(d, r);
  if (d == 1 && r == 0.0) return 0.0;
  const double z = lambda * r;
  cplx plus;
  if (d == 1) {
    // (i/2 lambda)(e^{iz} - 1) + r/2
    double re;
    if (z < 0.1) {
      double term = z * z * z / 6.0;
      re = 0.0;
      const double z2 = z * z;
      for (int k = 1; k < 12; ++k) {
        re += term;
        term *= -z2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
      }
    } else {
      re = z - std::sin(z);
    }
    const double sh = std::sin(0.5 * z);
    plus = {re / (2.0 * lambda), -sh * sh / lambda};
  } else if (d == 2) {
    const double jm1 = detail::j0_minus_one(z);
    const double lg = std::log(0.5 * z) + kEulerGamma;
    plus = cplx(0.0, 0.25) * jm1 - lg * jm1 / (2.0 * kPi) -
           0.25 * detail::y0_regular(z);
  } else if (d == 3) {
    const double sh = std::sin(0.5 * z);
    plus = cplx(-2.0 * sh * sh, std::sin(z)) / (4.0 * kPi * r);
  } else {
    plus = odd_dimension_prefactor(d) * odd_shifted(d, z) / std::pow(r, d - 2);
  }
  return conj_if_minus(s, plus);
}

std::vector<double> smooth_cutoff_derivatives(const CutoffSpec& spec, double z,
                                              int k) {
  spec.validate();
  if (k < 0 || k > spec.derivative_order) {
    throw DomainError("cutoff derivative order " + std::to_string(k) +
                      " outside 0.." + std::to_string(spec.derivative_order));
  }
  std::vector<double> out(k + 1, 0.0);
  const double width = spec.hi - spec.lo;
  const double t = (z - spec.lo) / width;
  // Beyond these margins every derivative is below 1e-100.
  if (t <= 2.5e-3) {
    out[0] = 1.0;
    return out;
  }
  if (t >= 1.0 - 2.5e-3) return out;
  using detail::Jet;
  const Jet tt = Jet::variable(k, t);
  const Jet one_minus = 1.0 - tt;
  const Jet a = exp(Jet(k, 0.0) - Jet(k, 1.0) / tt);
  const Jet b = exp(Jet(k, 0.0) - Jet(k, 1.0) / one_minus);
  const Jet s = b / (a + b);
  double scale = 1.0;
  for (int i = 0; i <= k; ++i) {
    out[i] = s.derivative(i) * scale;
    scale /= width;
  }
  return out;
}

double smooth_cutoff(const CutoffSpec& spec, double z, int k) {
  return smooth_cutoff_derivatives(spec, z, k)[k];
}

cplx amplitude(KernelPart part, int d, Sign s, double z) {
  require_dimension(d);
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError("amplitude argument must be positive");
  }
  const double sg = sign_value(s);
  const cplx g = free_kernel(d, s, 1.0, z);
  const cplx unphase = std::exp(cplx(0.0, -sg * z));
  const double half_pow = std::pow(z, 0.5 * (d - 1));
  static const CutoffSpec eta{0.5, 1.0, 0};
  switch (part) {
    case KernelPart::large_arg_phi:
      if (z <= 0.5) {
        throw DomainError("large-argument amplitude requires z > 1/2");
      }
      return g * half_pow * unphase;
    case KernelPart::amplitude_w0:
      return g * half_pow * unphase * (1.0 - smooth_cutoff(eta, z, 0));
    case KernelPart::amplitude_w1:
      return g * std::pow(z, d - 2) * unphase * smooth_cutoff(eta, z, 0);
    case KernelPart::spectral_measure_j: {
      const cplx phi = g * half_pow * unphase;
      return s == Sign::plus ? phi : -phi;
    }
    default:
      break;
  }
  throw DomainError(std::string("kernel part '") + to_string(part) +
                    "' is not an amplitude");
}

std::vector<cplx> kernel_part_values(KernelPart part, int d, Sign s,
                                     double lambda,
                                     const std::vector<double>& r_grid) {
  std::vector<cplx> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) {
    switch (part) {
      case KernelPart::full: out.push_back(free_kernel(d, s, lambda, r)); break;
      case KernelPart::fundamental:
        out.push_back(fundamental_kernel(d, r));
        break;
      case KernelPart::remainder:
        out.push_back(remainder(d, s, lambda, r));
        break;
      default:
        require_lambda(lambda);
        out.push_back(amplitude(part, d, s, lambda * r));
        break;
    }
  }
  return out;
}

}  // namespace rkwave
