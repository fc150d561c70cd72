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
#include <limits>

#include "rkwave/errors.hpp"
#include "rkwave/fields.hpp"

namespace rkwave {
namespace {

SampledField sample(double lo, double hi, int n, double (*f)(double)) {
  const double h = (hi - lo) / n;
  SampledField g = SampledField::line(lo + 0.5 * h, h, n);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double x;
    g.point(i, &x);
    g[i] = f(x);
  }
  return g;
}

TEST(Norms, IndicatorOfUnitInterval) {
  const auto g = sample(0.0, 1.0, 1000, [](double) { return 1.0; });
  const auto n = lp_norms(g, {1.0, 2.0, 4.0, kInfP});
  for (double v : n.lp) EXPECT_NEAR(v, 1.0, 1e-12);
  EXPECT_NEAR(n.sup, 1.0, 1e-15);
  EXPECT_NEAR(n.weak_l1, 1.0, 1e-12);
}

TEST(Norms, ReciprocalIsWeakButNotStrongL1) {
  for (double r : {100.0, 1000.0}) {
    const auto g = sample(1.0, r, 200000, [](double x) { return 1.0 / x; });
    const auto n = lp_norms(g, {1.0});
    EXPECT_NEAR(n.lp[0], std::log(r), 1e-4);
    EXPECT_NEAR(n.weak_l1, 1.0 - 1.0 / r, 5e-3);
  }
}

TEST(Norms, DilationScalesLpNorms) {
  const auto narrow = sample(-10.0, 10.0, 4000, [](double x) { return std::exp(-x * x); });
  const auto wide =
      sample(-20.0, 20.0, 8000, [](double x) { return std::exp(-0.25 * x * x); });
  const auto a = lp_norms(narrow, {1.0, 2.0, 3.0});
  const auto b = lp_norms(wide, {1.0, 2.0, 3.0});
  const double ps[] = {1.0, 2.0, 3.0};
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(b.lp[k] / a.lp[k], std::pow(2.0, 1.0 / ps[k]), 1e-10);
  }
}

TEST(Norms, TailWarningFlagsMassAtTheEdge) {
  const auto flat = sample(-5.0, 5.0, 1000, [](double) { return 1.0; });
  const auto n = lp_norms(flat, {1.0});
  EXPECT_NEAR(n.tail_fraction, 0.1, 2e-3);
  EXPECT_TRUE(n.tail_warning);
  const auto bump = sample(-5.0, 5.0, 1000, [](double x) { return std::exp(-4.0 * x * x); });
  EXPECT_FALSE(lp_norms(bump, {1.0}).tail_warning);
}

TEST(Norms, SquareGridVolume) {
  SampledField g = SampledField::square(-1.0, 0.01, 200);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = 1.0;
  EXPECT_NEAR(g.cell_volume(), 1e-4, 1e-18);
  EXPECT_NEAR(lp_norms(g, {1.0}).lp[0], 4.0, 1e-10);
  EXPECT_NEAR(g.l2_norm(), 2.0, 1e-10);
}

TEST(Norms, RatioReports) {
  const auto f = sample(0.0, 1.0, 100, [](double) { return 1.0; });
  SampledField tf = f;
  for (auto& v : tf.values()) v *= cplx(0.0, 3.0);
  const auto r = norm_reports(tf, f, {1.0, 2.0}, 7.0);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].ratio, 3.0, 1e-12);
  EXPECT_NEAR(r[1].ratio, 3.0, 1e-12);
  EXPECT_NEAR(r[0].weak_l1, 3.0, 1e-12);
  EXPECT_EQ(r[0].family_parameter, 7.0);
}

TEST(Fields, Preconditions) {
  SampledField g = SampledField::line(0.0, 0.1, 10);
  g[3] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(g.validate(), PreconditionError);
  const auto zero = SampledField::line(0.0, 0.1, 10);
  EXPECT_THROW(norm_reports(zero, zero, {1.0}, 0.0), PreconditionError);
  EXPECT_FALSE(zero.same_grid(SampledField::line(0.0, 0.1, 11)));
  EXPECT_TRUE(zero.same_grid(SampledField::line(0.0, 0.1, 10)));
}

}  // namespace
}  // namespace rkwave
