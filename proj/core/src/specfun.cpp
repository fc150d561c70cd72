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

#include "rkwave/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

#include "rkwave/errors.hpp"

namespace rkwave {

namespace {

using ld = long double;

constexpr double kSeriesLimit = 12.0;
constexpr double kMillerLimit = 35.0;
constexpr ld kPiL = 3.141592653589793238462643383279502884L;

// sum_k (-z^2/4)^k / (k! Gamma(k + nu + 1)) * (z/2)^nu, any real nu that
// keeps the Gamma arguments off the poles.
ld j_series(ld nu, ld z) {
  const ld q = -0.25L * z * z;
  ld term = std::pow(0.5L * z, nu) / std::tgamma(nu + 1.0L);
  ld sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<ld>(k) * (static_cast<ld>(k) + nu));
    sum += term;
    if (std::fabs(term) <= 1e-21L * std::fabs(sum)) break;
  }
  return sum;
}

// Integer-order Y_n by the logarithmic series.
ld y_series_int(int n, ld z) {
  const ld half = 0.5L * z;
  const ld q = 0.25L * z * z;
  ld head = 0.0L;
  if (n > 0) {
    // sum_{k<n} (n-k-1)!/k! q^k
    ld fact_nk1 = std::tgamma(static_cast<ld>(n));  // (n-1)!
    ld kfact = 1.0L;
    ld qk = 1.0L;
    for (int k = 0; k < n; ++k) {
      if (k > 0) {
        kfact *= k;
        fact_nk1 /= static_cast<ld>(n - k);
        qk *= q;
      }
      head += fact_nk1 / kfact * qk;
    }
    head *= std::pow(half, -static_cast<ld>(n)) / kPiL;
  }
  // psi(m+1) = -gamma + H_m
  ld hk = 0.0L;
  ld hnk = 0.0L;
  for (int m = 1; m <= n; ++m) hnk += 1.0L / m;
  ld term = std::pow(half, static_cast<ld>(n)) / std::tgamma(n + 1.0L);
  ld tail = (2.0L * -kEulerGammaL + hk + hnk) * term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<ld>(k) * static_cast<ld>(n + k));
    hk += 1.0L / k;
    hnk += 1.0L / (n + k);
    const ld add = (2.0L * -kEulerGammaL + hk + hnk) * term;
    tail += add;
    if (std::fabs(add) <= 1e-21L * std::fabs(tail) && k > 2) break;
  }
  const ld jn = j_series(static_cast<ld>(n), z);
  return -head + 2.0L / kPiL * std::log(half) * jn - tail / kPiL;
}

struct JY {
  double j;
  double y;
};

// Large-argument Hankel expansion; finite for half-integer orders.
JY hankel_expansion(double nu, double z) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double ak = 1.0;
  double prev = 1.0;
  double zk = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    ak *= (mu - odd * odd) / (8.0 * k);
    zk *= z;
    const double t = ak / zk;
    if (t == 0.0) break;
    if (std::fabs(t) > std::fabs(prev) && k > 2) break;  // divergent tail
    const int m = k % 4;
    if (m == 1) q += t;
    else if (m == 2) p -= t;
    else if (m == 3) q -= t;
    else p += t;
    if (std::fabs(t) < 1e-17) break;
    prev = t;
  }
  // chi = z - nu pi/2 - pi/4, expanded to keep full precision in z.
  const double c = 0.5 * nu * kPi + 0.25 * kPi;
  const double cz = std::cos(z);
  const double sz = std::sin(z);
  const double cc = std::cos(c);
  const double sc = std::sin(c);
  const double cos_chi = cz * cc + sz * sc;
  const double sin_chi = sz * cc - cz * sc;
  const double amp = std::sqrt(2.0 / (kPi * z));
  return {amp * (p * cos_chi - q * sin_chi), amp * (p * sin_chi + q * cos_chi)};
}

// Integer orders 0..n_max for 12 < z <= 35 by backward recurrence, with
// Y_0, Y_1 from Neumann series and upward recurrence for the rest.
void miller_int(double z, int n_max, double* j_out, double* y_out) {
  const int start = 2 * (static_cast<int>(0.75 * z + 30.0));
  std::array<ld, 200> jb{};
  ld jp1 = 0.0L;
  ld jk = 1e-30L;
  jb[start] = jk;
  for (int k = start; k >= 1; --k) {
    const ld jm1 = (2.0L * k / z) * jk - jp1;
    jp1 = jk;
    jk = jm1;
    jb[k - 1] = jk;
    if (std::fabs(jk) > 1e200L) {
      for (int m = k - 1; m <= start; ++m) jb[m] *= 1e-200L;
      jk *= 1e-200L;
      jp1 *= 1e-200L;
    }
  }
  ld norm = jb[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0L * jb[k];
  for (int k = 0; k <= start; ++k) jb[k] /= norm;

  const ld lg = std::log(0.5L * z) + kEulerGammaL;
  ld s0 = 0.0L;
  ld s1 = 0.0L;
  for (int k = 1; 2 * k + 1 <= start; ++k) {
    const ld sg = (k % 2 == 0) ? 1.0L : -1.0L;
    s0 += sg * jb[2 * k] / k;
    s1 += sg * (jb[2 * k - 1] - jb[2 * k + 1]) / k;
  }
  const ld y0 = 2.0L / kPiL * (lg * jb[0] - 2.0L * s0);
  const ld y1 = 2.0L / kPiL * (lg * jb[1] - jb[0] / z) + 2.0L / kPiL * s1;
  ld ym1 = y0;
  ld ycur = y1;
  for (int n = 0; n <= n_max; ++n) {
    if (j_out) j_out[n] = static_cast<double>(jb[n]);
    if (y_out) {
      if (n == 0) y_out[n] = static_cast<double>(y0);
      else if (n == 1) y_out[n] = static_cast<double>(y1);
      else {
        const ld ynext = (2.0L * (n - 1) / z) * ycur - ym1;
        ym1 = ycur;
        ycur = ynext;
        y_out[n] = static_cast<double>(ycur);
      }
    }
  }
}

void check_z(double z, const char* who) {
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw DomainError(std::string(who) + ": argument must be finite and >= 0");
  }
}

}  // namespace

BesselOrder::BesselOrder(int twice_order) : twice_(twice_order) {
  if (twice_order < 0 || twice_order > kMaxTwice) {
    throw OrderRangeError("Bessel order 2*nu=" + std::to_string(twice_order) +
                          " outside supported range 0..7");
  }
}

namespace detail {

double jv(int twice, double z) {
  if (twice == -1) {
    return std::sqrt(2.0 / (kPi * z)) * std::cos(z);
  }
  const bool integer = twice % 2 == 0;
  if (z == 0.0) return twice == 0 ? 1.0 : 0.0;
  const double nu = 0.5 * twice;
  if (z <= kSeriesLimit) return static_cast<double>(j_series(nu, z));
  if (!integer || z > kMillerLimit) return hankel_expansion(nu, z).j;
  double buf[8];
  miller_int(z, twice / 2, buf, nullptr);
  return buf[twice / 2];
}

double yv(int twice, double z) {
  if (twice == -1) {
    return std::sqrt(2.0 / (kPi * z)) * std::sin(z);
  }
  const double nu = 0.5 * twice;
  if (twice % 2 != 0) {
    if (z <= kSeriesLimit) {
      // Y_{n+1/2} = (-1)^{n+1} J_{-n-1/2}
      const int n = (twice - 1) / 2;
      const double sg = (n % 2 == 0) ? -1.0 : 1.0;
      return sg * static_cast<double>(j_series(-static_cast<ld>(nu), z));
    }
    return hankel_expansion(nu, z).y;
  }
  const int n = twice / 2;
  if (z <= kSeriesLimit) return static_cast<double>(y_series_int(n, z));
  if (z > kMillerLimit) return hankel_expansion(nu, z).y;
  double buf[8];
  miller_int(z, n, nullptr, buf);
  return buf[n];
}

double j_over_pow(int twice, double z) {
  const double nu = 0.5 * twice;
  if (z <= kSeriesLimit) {
    const ld q = -0.25L * static_cast<ld>(z) * z;
    ld term = std::pow(2.0L, -static_cast<ld>(nu)) / std::tgamma(nu + 1.0L);
    ld sum = term;
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<ld>(k) * (static_cast<ld>(k) + nu));
      sum += term;
      if (std::fabs(term) <= 1e-21L * std::fabs(sum)) break;
    }
    return static_cast<double>(sum);
  }
  return jv(twice, z) / std::pow(z, nu);
}

double j0_minus_one(double z) {
  if (z >= 2.0) return jv(0, z) - 1.0;
  const ld q = -0.25L * static_cast<ld>(z) * z;
  ld term = 1.0L;
  ld sum = 0.0L;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<ld>(k) * k);
    sum += term;
    if (std::fabs(term) <= 1e-21L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

double y0_regular(double z) {
  if (z >= 2.0) {
    return yv(0, z) -
           2.0 / kPi * (std::log(0.5 * z) + kEulerGamma) * jv(0, z);
  }
  const ld q = -0.25L * static_cast<ld>(z) * z;
  ld term = 1.0L;
  ld hk = 0.0L;
  ld sum = 0.0L;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<ld>(k) * k);
    hk += 1.0L / k;
    sum += hk * term;
    if (std::fabs(hk * term) <= 1e-21L * std::fabs(sum)) break;
  }
  return static_cast<double>(-2.0L / kPiL * sum);
}

}  // namespace detail

double bessel_j(BesselOrder order, double z) {
  check_z(z, "bessel_j");
  if (z == 0.0 && !order.is_integer()) {
    throw DomainError("bessel_j: z = 0 is only allowed for integer orders");
  }
  return detail::jv(order.twice(), z);
}

double bessel_y(BesselOrder order, double z) {
  check_z(z, "bessel_y");
  if (z == 0.0) {
    throw DomainError("bessel_y: logarithmic/pole branch point at z = 0");
  }
  return detail::yv(order.twice(), z);
}

cplx hankel(Sign kind, BesselOrder order, double z) {
  const double j = bessel_j(order, z);
  const double y = bessel_y(order, z);
  return {j, sign_value(kind) * y};
}

double bessel_j_prime(BesselOrder order, double z) {
  check_z(z, "bessel_j_prime");
  if (z == 0.0) throw DomainError("bessel_j_prime: z must be positive");
  const int t = order.twice();
  if (t == 0) return -detail::jv(2, z);
  return detail::jv(t - 2, z) - (0.5 * t / z) * detail::jv(t, z);
}

double bessel_y_prime(BesselOrder order, double z) {
  check_z(z, "bessel_y_prime");
  if (z == 0.0) throw DomainError("bessel_y_prime: z must be positive");
  const int t = order.twice();
  if (t == 0) return -detail::yv(2, z);
  return detail::yv(t - 2, z) - (0.5 * t / z) * detail::yv(t, z);
}

}  // namespace rkwave
