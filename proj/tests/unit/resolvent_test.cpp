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

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>

#include "rkwave/errors.hpp"
#include "rkwave/numerics.hpp"
#include "rkwave/resolvent.hpp"

namespace rkwave {
namespace {

// Literal free-space kernels written out independently of the library.
cplx literal_plus(int d, double lambda, double r) {
  const cplx e = std::exp(cplx(0.0, lambda * r));
  switch (d) {
    case 1: return kI / (2.0 * lambda) * e;
    case 2:
      return 0.25 * kI * cplx(boost::math::cyl_bessel_j(0, lambda * r),
                              boost::math::cyl_neumann(0, lambda * r));
    case 3: return e / (4.0 * M_PI * r);
    case 5: return e * (1.0 - kI * lambda * r) / (8.0 * M_PI * M_PI * std::pow(r, 3));
    case 7:
      return e * (3.0 - 3.0 * kI * lambda * r - lambda * lambda * r * r) /
             (16.0 * std::pow(M_PI, 3) * std::pow(r, 5));
  }
  return 0.0;
}

TEST(FreeKernel, MatchesLiteralForms) {
  for (int d : {1, 2, 3, 5, 7}) {
    for (double lambda : {0.1, 1.0, 7.0}) {
      for (double r : {0.05, 0.7, 3.0, 40.0}) {
        const cplx want = literal_plus(d, lambda, r);
        const cplx got = free_kernel(d, Sign::plus, lambda, r);
        EXPECT_LT(std::abs(got - want), 1e-12 * std::abs(want))
            << "d=" << d << " lambda=" << lambda << " r=" << r;
      }
    }
  }
}

TEST(FreeKernel, ConjugationSymmetryIsExact) {
  for (int d : {1, 2, 3, 5, 7}) {
    for (double r : {0.3, 2.0, 17.0}) {
      EXPECT_EQ(free_kernel(d, Sign::minus, 1.3, r),
                std::conj(free_kernel(d, Sign::plus, 1.3, r)));
    }
  }
}

TEST(FreeKernel, PinnedValues) {
  EXPECT_EQ(free_kernel(1, Sign::plus, 1.0, 0.0), cplx(0.0, 0.5));
  const cplx v = free_kernel(3, Sign::plus, 2.0, 1.0);
  EXPECT_NEAR(v.real(), std::cos(2.0) / (4 * M_PI), 1e-15);
  EXPECT_NEAR(v.real(), -0.0331159130, 1e-9);
  EXPECT_NEAR(v.imag(), 0.0723595901, 1e-9);
  // -Y0/4 near the origin: -(ln(r/2) + gamma) / 2pi
  EXPECT_NEAR(free_kernel(2, Sign::plus, 1.0, 1e-6).real(),
              -(std::log(0.5e-6) + 0.57721566490153286) / (2 * M_PI), 1e-9);
}

TEST(FreeKernel, RejectsBadArguments) {
  EXPECT_THROW(free_kernel(0, Sign::plus, 1.0, 1.0), DomainError);
  EXPECT_THROW(free_kernel(1, Sign::plus, 0.0, 1.0), DomainError);
  EXPECT_THROW(free_kernel(3, Sign::plus, 1.0, 0.0), SingularityError);
  EXPECT_THROW(free_kernel(1, Sign::plus, 1.0, -1.0), DomainError);
}

TEST(FundamentalKernel, PinnedValues) {
  EXPECT_NEAR(fundamental_kernel(3, 1.0), 1.0 / (4 * M_PI), 1e-16);
  EXPECT_EQ(fundamental_kernel(2, 1.0), 0.0);
  EXPECT_EQ(fundamental_kernel(1, 3.0), -1.5);
}

TEST(SpectralMeasure, PinnedValues) {
  EXPECT_EQ(spectral_measure_kernel(1, 1.0, 0.0), cplx(0.0, 1.0));
  EXPECT_NEAR(std::abs(spectral_measure_kernel(3, 1.0, M_PI)), 0.0, 1e-16);
  for (double r : {0.0, 0.5, 9.0}) {
    const cplx v = spectral_measure_kernel(2, 1.7, r);
    EXPECT_NEAR(v.imag(), 0.5 * boost::math::cyl_bessel_j(0, 1.7 * r), 1e-14);
  }
  // Jump across the cut equals R+ - R-.
  for (int d : {1, 3, 5}) {
    const cplx jump = free_kernel(d, Sign::plus, 0.9, 2.0) - free_kernel(d, Sign::minus, 0.9, 2.0);
    EXPECT_LT(std::abs(spectral_measure_kernel(d, 0.9, 2.0) - jump), 1e-14);
  }
}

TEST(Remainder, VanishesAtLowEnergyWithExpectedOrder) {
  // d = 1: |remainder| / lambda bounded by C r^2.
  for (double lambda : {1e-2, 1e-3, 1e-4}) {
    EXPECT_LT(std::abs(remainder(1, Sign::plus, lambda, 1.0)) / lambda, 1.0);
  }
  EXPECT_LT(std::abs(remainder(3, Sign::plus, 1e-3, 1.0)), 1e-3);
  std::vector<double> x, y;
  for (double lambda : {1e-2, 3e-3, 1e-3, 3e-4, 1e-4}) {
    x.push_back(std::log(lambda));
    y.push_back(std::log(std::abs(remainder(2, Sign::plus, lambda, 1.0))));
  }
  EXPECT_GE(fit_line(x, y).slope, 0.9);
}

TEST(Remainder, ReassemblesFullKernel) {
  for (int d : {1, 3, 5}) {
    const double lambda = 0.4, r = 1.5;
    const cplx lead = d == 1 ? cplx(0.0, 0.5 / lambda) : cplx(0.0);
    const cplx sum = lead + fundamental_kernel(d, r) + remainder(d, Sign::plus, lambda, r);
    EXPECT_LT(std::abs(sum - free_kernel(d, Sign::plus, lambda, r)), 1e-13) << d;
  }
}

TEST(SmoothCutoff, PlateauSupportAndMonotone) {
  const CutoffSpec c{0.5, 1.0, 8};
  EXPECT_EQ(smooth_cutoff(c, 0.3, 0), 1.0);
  EXPECT_EQ(smooth_cutoff(c, 2.0, 0), 0.0);
  const double dv = smooth_cutoff(c, 0.75, 1);
  EXPECT_LT(dv, 0.0);
  const double h = 1e-5;
  const double fd = (smooth_cutoff(c, 0.75 + h, 0) - smooth_cutoff(c, 0.75 - h, 0)) / (2 * h);
  EXPECT_NEAR(dv, fd, 1e-6);
  EXPECT_THROW(smooth_cutoff(c, 0.7, 9), DomainError);
  EXPECT_THROW((CutoffSpec{1.0, 0.5, 2}.validate()), DomainError);
}

TEST(Amplitudes, PinnedValues) {
  for (double z : {0.6, 3.0, 50.0}) {
    EXPECT_NEAR(std::abs(amplitude(KernelPart::large_arg_phi, 3, Sign::plus, z) -
                         1.0 / (4 * M_PI)),
                0.0, 1e-15);
    EXPECT_NEAR(std::abs(amplitude(KernelPart::spectral_measure_j, 1, Sign::plus, z)), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(amplitude(KernelPart::spectral_measure_j, 1, Sign::minus, z)), 0.5, 1e-15);
  }
  // Reassembly of the d = 2 kernel from the two amplitudes at z = 3.
  const double z = 3.0;
  const cplx phase = std::exp(cplx(0.0, z));
  const cplx w0 = amplitude(KernelPart::amplitude_w0, 2, Sign::plus, z);
  const cplx w1 = amplitude(KernelPart::amplitude_w1, 2, Sign::plus, z);
  const cplx rebuilt = phase * (w0 / std::sqrt(z) + w1);
  EXPECT_LT(std::abs(rebuilt - free_kernel(2, Sign::plus, 1.0, z)), 1e-10);
  EXPECT_THROW(amplitude(KernelPart::large_arg_phi, 3, Sign::plus, 0.4), DomainError);
}

TEST(KernelParts, NamesRoundTrip) {
  for (auto p : {KernelPart::full, KernelPart::fundamental, KernelPart::remainder,
                 KernelPart::amplitude_w0, KernelPart::amplitude_w1,
                 KernelPart::large_arg_phi, KernelPart::spectral_measure_j}) {
    EXPECT_EQ(kernel_part_from_string(to_string(p)), p);
  }
  EXPECT_THROW(kernel_part_from_string("nope"), DomainError);
}

}  // namespace
}  // namespace rkwave
