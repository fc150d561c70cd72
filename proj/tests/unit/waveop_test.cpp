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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "rkwave/errors.hpp"
#include "rkwave/waveop.hpp"

namespace rkwave {
namespace {

using boost::math::quadrature::gauss_kronrod;

SampledField packet_1d(double half, double h, double width, double momentum) {
  const int n = static_cast<int>(std::lround(2.0 * half / h));
  SampledField f = SampledField::line(-half, h, n + 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double x;
    f.point(i, &x);
    const double t = x / width;
    f[i] = std::exp(cplx(-0.5 * t * t, momentum * x));
  }
  return f;
}

double max_abs(const SampledField& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

WaveOpConfig gaussian_config(int d, double width, double alpha, double lambda0) {
  auto cfg = WaveOpConfig::make(
      PerturbationModel::rank_one(alpha, PotentialProfile::gaussian(d, width)), lambda0);
  return cfg;
}

TEST(HilbertPiece, PointValues) {
  EXPECT_EQ(hilbert_piece(0.5, 0.7), cplx(0.0));
  EXPECT_EQ(hilbert_piece(0.5, -1.2), cplx(0.0));
  const cplx v = hilbert_piece(0.0, 3.0);
  EXPECT_LT(std::abs(v - 1.0 / (3.0 * M_PI * kI)), 1e-15);
}

TEST(HilbertPiece, BandClosedFormAtOrigin) {
  const cplx v = hilbert_piece_on_band(0.0, 20.0);
  EXPECT_NEAR(std::abs(v), 2.0 / M_PI * std::log(10.0), 1e-14);
  EXPECT_NEAR(v.imag(), -2.0 / M_PI * std::log(10.0), 1e-14);
  EXPECT_EQ(hilbert_piece_on_band(0.3, 2.0), cplx(0.0));
}

TEST(HilbertPiece, BandMatchesQuadrature) {
  for (double x : {0.0, 0.5, 0.9}) {
    for (double r : {5.0, 40.0}) {
      auto fn = [&](double y) { return (hilbert_piece(x, y) * kI).real(); };
      double want = 0.0;
      for (double s : {-1.0, 1.0}) {
        auto g = [&](double y) { return fn(s * y); };
        // split at the excluded band edges
        const double a = std::max(2.0, x + 1.0);
        want += gauss_kronrod<double, 61>::integrate(g, a, r, 20, 1e-13);
      }
      const cplx got = hilbert_piece_on_band(x, r) * kI;
      EXPECT_NEAR(got.real(), want, 1e-10) << "x=" << x << " R=" << r;
    }
  }
}

TEST(WaveOp, ZeroCouplingIsIdentity) {
  auto cfg = gaussian_config(1, 1.0, 0.0, 0.5);
  const auto f = packet_1d(10.0, 0.1, 1.0, 0.5);
  const auto w = apply_w_minus(cfg, f);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(w.output[i], f[i]);
}

TEST(WaveOp, ConfigPreconditions) {
  auto cfg = gaussian_config(1, 1.0, 1.0, 0.5);
  cfg.chi.hi = 0.6;
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg = gaussian_config(1, 1.0, 1.0, 0.5);
  cfg.lambda0 = -1.0;
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg = gaussian_config(1, 1.0, 1.0, 0.5);
  SampledField sq = SampledField::square(-1.0, 0.5, 4);
  EXPECT_THROW(scattered_part(cfg, sq, EnergyBand::full), PreconditionError);
}

TEST(WaveOp, BandsAddUpToFullOperator) {
  auto cfg = gaussian_config(1, 1.0, 1.0, 0.5);
  const auto f = packet_1d(12.0, 0.1, 1.0, 1.0);
  const auto s = low_high_split(cfg, f);
  EXPECT_LT(s.consistency, 1e-6);
  EXPECT_GT(max_abs(s.full), 1e-3);
}

TEST(WaveOp, FastPacketBarelyTouchesLowEnergies) {
  auto cfg = gaussian_config(1, 0.5, 1.0, 0.5);
  const auto f = packet_1d(25.0, 0.05, 2.0, 3.0);
  const auto s = low_high_split(cfg, f);
  EXPECT_LT(max_abs(s.low.output), 0.1 * max_abs(s.high.output));
}

TEST(WaveOp, FactorizedLowEnergyMatchesDirectRoute) {
  // same setup as configs/wave_d2.ini
  auto cfg = gaussian_config(2, 0.5, 5.0, 2.0);
  cfg.direct_cross_check = true;
  const int n = 128;
  const double half = 16.0;
  SampledField f = SampledField::square(-half, 2.0 * half / n, n);
  double x[2];
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.point(i, x);
    f[i] = std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]) / 2.25) *
           std::exp(kI * 2.0 * x[0]);
  }
  const auto r = scattered_part(cfg, f, EnergyBand::low);
  ASSERT_GE(r.cross_check_difference, 0.0);
  EXPECT_LT(r.cross_check_difference, 5e-2);
}

TEST(Dichotomy, HilbertPieceGrowsLogarithmically) {
  auto cfg = gaussian_config(1, 1.0, 1.0, 0.5);
  const auto rep = dichotomy_d1(cfg, {4.0, 40.0, 400.0}, false);
  ASSERT_EQ(rep.rows.size(), 3u);
  for (const auto& row : rep.rows) {
    EXPECT_NEAR(row.hilbert_at_zero, 2.0 / M_PI * std::log(row.r_outer / 2.0), 1e-12);
  }
  // the sup sits near |x| = 1, where finite-R terms still move it at R = 4
  EXPECT_NEAR(rep.hilbert_slope, 2.0 / M_PI, 1e-2);
  for (const auto& row : rep.rows) EXPECT_GE(row.hilbert_sup, row.hilbert_at_zero);
  EXPECT_FALSE(rep.hilbert_absent);
  EXPECT_THROW(dichotomy_d1(cfg, {1.0}, false), PreconditionError);
}

TEST(Dichotomy, MeanZeroProfileHasNoHilbertPiece) {
  auto cfg = gaussian_config(1, 1.0, 1.0, 0.5);
  cfg.model = PerturbationModel::rank_one(1.0, PotentialProfile::mexican_hat(1, 1.0));
  const auto rep = dichotomy_d1(cfg, {4.0}, false);
  EXPECT_TRUE(rep.hilbert_absent);
  const auto mz = mean_zero_family(cfg, {0.5, 5.0}, {0.0, 20.0});
  EXPECT_EQ(mz.l1_ratios.size(), 4u);
  EXPECT_LT(mz.max_over_min, 3.0);
}

TEST(Multiplier, UnitSymbolIsIdentity) {
  SampledField f = SampledField::line(-8.0, 0.125, 128);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double x;
    f.point(i, &x);
    f[i] = std::exp(-x * x) * cplx(1.0, 0.5);
  }
  const auto out = multiplier_apply([](double) { return cplx(1.0); }, f);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_LT(std::abs(out.output[i] - f[i]), 1e-14);
  EXPECT_TRUE(out.aliasing_warning);
}

TEST(Multiplier, RemovesModesOutsideSupport) {
  SampledField f = SampledField::line(0.0, 2.0 * M_PI / 64, 64);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double x;
    f.point(i, &x);
    f[i] = std::cos(x) + std::cos(20.0 * x);
  }
  auto low_pass = [](double k) { return cplx(k < 5.0 ? 1.0 : 0.0); };
  const auto out = multiplier_apply(low_pass, f, 5.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double x;
    f.point(i, &x);
    EXPECT_LT(std::abs(out.output[i] - std::cos(x)), 1e-13);
  }
  EXPECT_FALSE(out.aliasing_warning);
}

TEST(Multiplier, GridPreconditions) {
  EXPECT_THROW(multiplier_apply([](double) { return cplx(1.0); },
                                SampledField::line(0.0, 0.1, 100)),
               PreconditionError);
}

TEST(KernelDecay, LogarithmicSymbolKernelIsBounded) {
  const auto rep = multiplier_kernel_decay(1.0, 2, CutoffSpec{0.5, 1.0, 8}, QuadConfig{});
  EXPECT_EQ(rep.x.size(), 41u);
  EXPECT_TRUE(rep.bounded);
  EXPECT_LT(rep.max_over_median, 10.0);
}

TEST(KernelDecay, ExponentPrecondition) {
  const CutoffSpec chi{0.5, 1.0, 8};
  EXPECT_THROW(multiplier_kernel_decay(0.25, 2, chi, QuadConfig{}), PreconditionError);
  EXPECT_THROW(multiplier_kernel_decay(2.0, 3, chi, QuadConfig{}), PreconditionError);
}

}  // namespace
}  // namespace rkwave
