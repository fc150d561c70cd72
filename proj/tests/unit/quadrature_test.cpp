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

#include <gtest/gtest.h>

#include <cmath>

#include "rkwave/errors.hpp"
#include "rkwave/quadrature.hpp"

namespace rkwave {
namespace {

// psi(lambda) = lambda^b with analytic derivatives.
OscillatoryIntegrand power_symbol(double b, CutoffSpec cutoff) {
  OscillatoryIntegrand ig;
  ig.b = b;
  ig.k_max = static_cast<int>(b) + 2;
  ig.cutoff = cutoff;
  ig.psi = [b](double x, int k) -> cplx {
    double c = 1.0;
    for (int j = 0; j < k; ++j) c *= b - j;
    return c * std::pow(x, b - k);
  };
  return ig;
}

std::vector<double> rho_grid() {
  std::vector<double> r;
  for (int i = 0; i <= 20; ++i) r.push_back(10.0 * std::pow(100.0, i / 20.0));
  return r;
}

TEST(GaussKronrod, PolynomialAndOscillatory) {
  QuadConfig q;
  const auto a = integrate_gk<double>([](double x) { return x * x * x; }, 0.0, 2.0, q);
  EXPECT_NEAR(a.value, 4.0, 1e-13);
  const auto b = integrate_gk<double>([](double x) { return std::cos(40 * x); }, 0.0, 1.0, q);
  EXPECT_NEAR(b.value, std::sin(40.0) / 40.0, 1e-10);
  EXPECT_TRUE(b.converged);
}

TEST(TanhSinh, EndpointSingularity) {
  QuadConfig q;
  auto f = [](double x, double) { return 1.0 / std::sqrt(x); };
  const auto r = integrate_tanh_sinh<double>(f, 0.0, 1.0, q);
  EXPECT_NEAR(r.value, 2.0, 1e-9);
  auto g = [](double x, double) { return std::log(x); };
  EXPECT_NEAR(integrate_tanh_sinh<double>(g, 0.0, 1.0, q).value, -1.0, 1e-10);
}

TEST(PrincipalValue, PinnedValues) {
  QuadConfig q;
  EXPECT_NEAR(principal_value([](double y) { return 1.0 / (2.0 - y); }, 2.0, -1.0, 1.0, q).value,
              std::log(3.0), 1e-10);
  EXPECT_NEAR(principal_value([](double y) { return 1.0 / y; }, 0.0, -1.0, 1.0, q).value, 0.0,
              1e-10);
  EXPECT_NEAR(principal_value([](double y) { return 1.0 / (y - 1.0); }, 1.0, 0.0, 3.0, q).value,
              std::log(2.0), 1e-9);
}

TEST(SphereAverage, PinnedValues) {
  QuadConfig q;
  for (double r : {0.5, 3.0}) {
    EXPECT_NEAR(sphere_average([](double, double) { return 1.0; }, r, q), M_PI, 1e-12);
    EXPECT_NEAR(sphere_average([](double x, double) { return x; }, r, q), 0.0, 1e-12);
  }
  EXPECT_NEAR(sphere_average([](double x, double y) { return x * x + y * y; }, 2.0, q),
              4.0 * M_PI, 1e-11);
}

TEST(OscillatoryHalfline, BoundsAndReflection) {
  QuadConfig q;
  auto ig = power_symbol(0.0, CutoffSpec{0.5, 1.0, 8});
  const auto at0 = oscillatory_halfline(ig, 0.0, q);
  EXPECT_GT(at0.value.real(), 0.5);
  EXPECT_LT(at0.value.real(), 1.0);
  EXPECT_NEAR(at0.value.imag(), 0.0, 1e-14);
  const auto p = oscillatory_halfline(ig, 7.0, q).value;
  const auto m = oscillatory_halfline(ig, -7.0, q).value;
  EXPECT_LT(std::abs(p - std::conj(m)), 1e-9);
}

TEST(DecayProbe, PowerSymbolSlopes) {
  QuadConfig q;
  for (double b : {0.5, 1.5}) {
    const auto fit = decay_rate_probe(power_symbol(b, CutoffSpec{0.5, 8.0, 8}), rho_grid(), q);
    EXPECT_NEAR(fit.slope, -(b + 1.0), 0.15) << "b=" << b;
  }
  const auto smooth = decay_rate_probe(power_symbol(0.0, CutoffSpec{0.5, 8.0, 8}), rho_grid(), q);
  // the lambda = 0 boundary term i/rho dominates
  EXPECT_NEAR(smooth.slope, -1.0, 1e-3);
}

TEST(DecayProbe, GridPreconditions) {
  QuadConfig q;
  auto ig = power_symbol(0.5, CutoffSpec{0.5, 8.0, 8});
  EXPECT_THROW(decay_rate_probe(ig, {10.0, 100.0}, q), DomainError);
  EXPECT_THROW(decay_rate_probe(ig, {0.5, 100.0}, q), DomainError);
}

TEST(FitDecay, SyntheticPowerLaw) {
  std::vector<double> r, m;
  for (double x : rho_grid()) {
    r.push_back(x);
    m.push_back(std::pow(x, -2.0));
  }
  EXPECT_NEAR(fit_decay(r, m).slope, -2.0, 1e-3);
}

TEST(QuadConfig, RejectsNonsense) {
  QuadConfig q;
  q.abs_tol = -1.0;
  EXPECT_THROW(q.validate(), DomainError);
}

}  // namespace
}  // namespace rkwave
