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
#include "rkwave/oracle.hpp"
#include "rkwave/spectral.hpp"

namespace rkwave {
namespace {

SampledField packet(const GridSpec& g, double width, double momentum) {
  SampledField f = g.field();
  double x[2];
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.point(i, x);
    double r2 = 0.0;
    for (int a = 0; a < g.d; ++a) r2 += x[a] * x[a];
    f[i] = std::exp(cplx(-0.5 * r2 / (width * width), momentum * x[0]));
  }
  return f;
}

PerturbationModel two_profile_family() {
  return orthonormalize_psi(PerturbationModel::finite_rank(
      {PotentialProfile::gaussian(1, 0.5), PotentialProfile::mexican_hat(1, 0.5, {6.0})}));
}

// H u in l2 coordinates, written out from the symbol and the profiles.
Eigen::VectorXcd apply_h(const DiscreteModel& dm, const Eigen::VectorXcd& u) {
  Eigen::VectorXcd w = dm.to_frequency(u);
  w = w.cwiseProduct(dm.symbol().cast<cplx>());
  Eigen::VectorXcd out = dm.to_position(w);
  out += dm.coupling() * (dm.phi() * (dm.phi().adjoint() * u));
  return out;
}

TEST(Grid, Preconditions) {
  EXPECT_THROW((GridSpec{1, 40.0, 3000}.validate()), PreconditionError);
  EXPECT_THROW((GridSpec{1, 40.0, 128}.validate()), PreconditionError);
  EXPECT_THROW((GridSpec{3, 40.0, 256}.validate()), PreconditionError);
  EXPECT_THROW((GridSpec{1, -1.0, 256}.validate()), PreconditionError);
  EXPECT_NO_THROW((GridSpec{2, 32.0, 64}.validate()));
}

TEST(Discretize, GaussianGridMassMatchesClosedForm) {
  const auto model = PerturbationModel::rank_one(1.0, PotentialProfile::gaussian(1, 1.0));
  const auto dm = DiscreteModel::discretize(model, GridSpec{1, 40.0, 2048});
  const double want = std::sqrt(2.0) * std::pow(M_PI, 0.25);
  EXPECT_NEAR(dm.report().grid_mass[0], want, 1e-8);
  EXPECT_NEAR(dm.report().continuum_mass[0], want, 1e-10);
  EXPECT_LT(dm.report().boundary_max, 1e-8);
}

TEST(Discretize, TwoProfileFamilyStaysOrthonormal) {
  const auto dm = DiscreteModel::discretize(two_profile_family(), GridSpec{1, 40.0, 2048});
  EXPECT_EQ(dm.rank(), 2);
  EXPECT_LT(dm.report().orthonormality_drift, 1e-6);
  const Eigen::MatrixXcd g = dm.phi().adjoint() * dm.phi();
  EXPECT_LT((g - Eigen::MatrixXcd::Identity(2, 2)).norm(), 1e-12);
}

TEST(Discretize, TailsAtTheBoxEdgeAreRejected) {
  const auto model =
      PerturbationModel::rank_one(1.0, PotentialProfile::gaussian(1, 1.0, {36.0}));
  EXPECT_THROW(DiscreteModel::discretize(model, GridSpec{1, 40.0, 2048}),
               BoundaryLeakageError);
}

TEST(Discretize, FreeModelHasNoPerturbation) {
  const auto dm = DiscreteModel::free(GridSpec{1, 40.0, 256});
  EXPECT_EQ(dm.rank(), 0);
  const auto f = packet(dm.grid(), 2.0, 1.0);
  const auto u = dm.to_l2(f);
  const auto a = resolvent_direct(dm, cplx(1.0, 0.5), u, true);
  const auto b = resolvent_direct(dm, cplx(1.0, 0.5), u, false);
  EXPECT_EQ((a - b).norm(), 0.0);
  const auto r = wave_operator_time_limit(dm, u, 1.0);
  EXPECT_EQ((r.output - u).norm(), 0.0);
}

TEST(Resolvent, PositiveBelowTheSpectrum) {
  const auto model = PerturbationModel::rank_one(1.0, PotentialProfile::gaussian(1, 1.0));
  const auto dm = DiscreteModel::discretize(model, GridSpec{1, 40.0, 2048});
  const Eigen::VectorXcd phi = dm.phi().col(0);
  const auto u = resolvent_direct(dm, cplx(-1.0, 0.0), phi, false);
  const cplx p = phi.dot(u);
  EXPECT_GT(p.real(), 0.0);
  EXPECT_LT(std::fabs(p.imag()), 1e-14);
  EXPECT_THROW(resolvent_direct(dm, cplx(2.0, 0.0), phi, false), DomainError);
}

TEST(Resolvent, SolvesTheShiftedEquation) {
  const auto dm = DiscreteModel::discretize(two_profile_family(), GridSpec{1, 40.0, 2048});
  const auto rhs = dm.to_l2(packet(dm.grid(), 1.5, 2.0));
  for (cplx z : {cplx(-1.0, 0.0), cplx(3.0, 0.2), cplx(0.5, -1.0)}) {
    for (bool perturbed : {false, true}) {
      const auto u = resolvent_direct(dm, z, rhs, perturbed);
      Eigen::VectorXcd back;
      if (perturbed) {
        back = apply_h(dm, u) - z * u;
      } else {
        Eigen::VectorXcd w = dm.to_frequency(u);
        w = w.cwiseProduct((dm.symbol().cast<cplx>().array() - z).matrix());
        back = dm.to_position(w);
      }
      // cond(H - z) reaches ~3e4 at z = 3 + 0.2i on this grid
      EXPECT_LT((back - rhs).norm() / rhs.norm(), 1e-10) << "z=" << z;
    }
  }
}

TEST(Resolvent, AdjointSymmetry) {
  const auto dm = DiscreteModel::discretize(two_profile_family(), GridSpec{1, 40.0, 2048});
  const auto u = dm.to_l2(packet(dm.grid(), 1.5, 2.0));
  const auto v = dm.to_l2(packet(dm.grid(), 0.7, -1.0));
  const cplx z(2.0, 0.3);
  const cplx lhs = v.dot(resolvent_direct(dm, z, u, true));
  const cplx rhs = resolvent_direct(dm, std::conj(z), v, true).dot(u);
  EXPECT_LT(std::abs(lhs - rhs), 1e-13 * std::abs(lhs));
}

TEST(BoundaryValue, MatchesContinuumPairing) {
  // Level spacing 2 pi lambda / L must sit well below eps = 1e-3.
  const auto g = PotentialProfile::gaussian(1, 1.0);
  const auto dm = DiscreteModel::discretize(PerturbationModel::rank_one(1.0, g),
                                            GridSpec{1, 65536.0, 1 << 19});
  const auto bv = boundary_value(dm, 0, 0, 1.0, 1e-3);
  const cplx want = f_entry(g, g, Sign::plus, 1.0, QuadConfig{});
  EXPECT_LT(std::abs(bv.value - want), 1e-4);
  EXPECT_GT(std::abs(bv.at_eps - want), std::abs(bv.value - want));
  EXPECT_THROW(boundary_value(dm, 0, 0, 1.0, 0.0), PreconditionError);
}

TEST(Ak, RankOneIdentityAndScalarForm) {
  const auto model = PerturbationModel::rank_one(0.7, PotentialProfile::gaussian(1, 1.0));
  const auto dm = DiscreteModel::discretize(model, GridSpec{1, 40.0, 2048});
  for (cplx z : {cplx(4.0, 1e-3), cplx(-2.0, 0.0), cplx(0.3, -0.5)}) {
    const auto r = ak_identity_check(dm, z);
    EXPECT_LT(r.residual, 1e-10);
    ASSERT_GE(r.scalar_difference, 0.0);
    EXPECT_LT(r.scalar_difference, 1e-12);
  }
}

TEST(Ak, TwoProfileIdentity) {
  const auto dm = DiscreteModel::discretize(two_profile_family(), GridSpec{1, 40.0, 2048});
  const auto r = ak_identity_check(dm, cplx(4.0, 1e-3));
  EXPECT_LT(r.residual, 1e-10);
  EXPECT_LT(r.scalar_difference, 0.0);
  EXPECT_THROW(ak_identity_check(DiscreteModel::free(GridSpec{1, 40.0, 256}), cplx(1.0, 1.0)),
               PreconditionError);
}

TEST(TimeLimit, ZeroCouplingReturnsSource) {
  const auto model = PerturbationModel::rank_one(0.0, PotentialProfile::gaussian(1, 1.0));
  const auto dm = DiscreteModel::discretize(model, GridSpec{1, 40.0, 2048});
  const auto u = dm.to_l2(packet(dm.grid(), 1.5, 4.0));
  EXPECT_EQ((wave_operator_time_limit(dm, u, 1.0).output - u).norm(), 0.0);
}

TEST(TimeLimit, EigenbasisIsUnitary) {
  const auto model = PerturbationModel::rank_one(1.0, PotentialProfile::gaussian(1, 1.0));
  const auto dm = DiscreteModel::discretize(model, GridSpec{1, 40.0, 512});
  const auto& v = dm.coupled_vectors();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(v.cols(), v.cols());
  EXPECT_LT((v.adjoint() * v - id).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(TimeLimit, WrapGuardAndBandLimit) {
  const auto model = PerturbationModel::rank_one(1.0, PotentialProfile::gaussian(1, 1.0));
  const auto dm = DiscreteModel::discretize(model, GridSpec{1, 40.0, 2048});
  const auto u = dm.to_l2(packet(dm.grid(), 1.5, 4.0));
  const double tmax = max_time(dm, u);
  EXPECT_GT(tmax, 0.5);
  EXPECT_THROW(wave_operator_time_limit(dm, u, 1.01 * tmax), WrapAroundError);
  EXPECT_THROW(wave_operator_time_limit(dm, u, 0.0), PreconditionError);
  // Energy near Nyquist.
  const auto fast = dm.to_l2(packet(dm.grid(), 1.5, 70.0));
  EXPECT_THROW(max_time(dm, fast), PreconditionError);
}

TEST(TimeLimit, AveragingModesAgree) {
  const auto model = PerturbationModel::rank_one(1.0, PotentialProfile::gaussian(1, 1.0));
  const auto dm = DiscreteModel::discretize(model, GridSpec{1, 40.0, 2048});
  const auto u = dm.to_l2(packet(dm.grid(), 1.5, 4.0));
  const double t = 0.5 * max_time(dm, u);
  TimeLimitOptions abel;
  abel.averaging = Averaging::abel;
  const auto a = wave_operator_time_limit(dm, u, t);
  const auto b = wave_operator_time_limit(dm, u, t, abel);
  EXPECT_LT(a.isometry_drift, 1e-2);
  EXPECT_LT(b.isometry_drift, 1e-2);
  EXPECT_LT((a.output - b.output).norm() / u.norm(), 5e-2);
  EXPECT_EQ(averaging_from_string("abel"), Averaging::abel);
  EXPECT_THROW(averaging_from_string("cesaro"), PreconditionError);
}

TEST(Compare, StationaryMatchesTimeLimitRankOne) {
  const GridSpec grid{1, 40.0, 2048};
  auto cfg = WaveOpConfig::make(
      PerturbationModel::rank_one(1.0, PotentialProfile::gaussian(1, 1.0)), 0.5);
  const auto rep = compare_stationary_vs_time(cfg, grid, packet(grid, 1.5, 4.0));
  EXPECT_LT(rep.rel_l2_error, 5e-2);
  EXPECT_LT(rep.t_doubling_difference, 2e-2);
  EXPECT_LT(rep.isometry_drift_time, 1e-2);
  EXPECT_LT(rep.isometry_drift_stationary, 1e-2);
  EXPECT_LT(rep.ak_residual, 1e-10);
}

TEST(Compare, ZeroCouplingGivesZeroError) {
  const GridSpec grid{1, 40.0, 2048};
  auto cfg = WaveOpConfig::make(
      PerturbationModel::rank_one(0.0, PotentialProfile::gaussian(1, 1.0)), 0.5);
  const auto rep = compare_stationary_vs_time(cfg, grid, packet(grid, 1.5, 4.0));
  EXPECT_EQ(rep.rel_l2_error, 0.0);
}

TEST(Compare, TwoProfileFamily) {
  const GridSpec grid{1, 40.0, 2048};
  auto cfg = WaveOpConfig::make(two_profile_family(), 0.5);
  const auto rep = compare_stationary_vs_time(cfg, grid, packet(grid, 1.5, 4.0));
  EXPECT_LT(rep.rel_l2_error, 8e-2);
  EXPECT_LT(rep.t_doubling_difference, 2e-2);
}

TEST(Compare, DoublingGapShrinksWithTime) {
  const GridSpec grid{1, 40.0, 2048};
  auto cfg = WaveOpConfig::make(
      PerturbationModel::rank_one(1.0, PotentialProfile::gaussian(1, 1.0)), 0.5);
  const auto f = packet(grid, 1.5, 2.0);
  const auto dm = DiscreteModel::discretize(cfg.model, grid);
  const double tmax = max_time(dm, dm.to_l2(f));
  const auto early = compare_stationary_vs_time(cfg, grid, f, 0.125 * tmax);
  const auto late = compare_stationary_vs_time(cfg, grid, f, 0.5 * tmax);
  EXPECT_LT(late.t_doubling_difference, early.t_doubling_difference);
}

}  // namespace
}  // namespace rkwave
