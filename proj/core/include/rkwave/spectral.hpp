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

// F / A / G spectral objects, low-energy expansions and condition scans.

#ifndef RKWAVE_SPECTRAL_HPP_
#define RKWAVE_SPECTRAL_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rkwave/model.hpp"

namespace rkwave {

// <R_0^sign(lambda^2) phi_i, phi_j>.
cplx f_entry(const PotentialProfile& phi_i, const PotentialProfile& phi_j,
             Sign sign, double lambda, const QuadConfig& cfg);

// A = I + alpha F^T (alpha = 1 for finite rank).
Eigen::MatrixXcd build_A(const PerturbationModel& model, Sign sign,
                         double lambda, const QuadConfig& cfg);
// Same from a precomputed F.
Eigen::MatrixXcd build_A(const Eigen::MatrixXcd& f, double alpha = 1.0);

// A^{-1}; ConditioningError when |det A| <= 1e-12.
Eigen::MatrixXcd invert_G(const Eigen::MatrixXcd& a);

// The matrix weighting the stationary formula: alpha (I + alpha F^T)^{-1}.
Eigen::MatrixXcd effective_G(const PerturbationModel& model, Sign sign,
                             double lambda, const QuadConfig& cfg);

// alpha / (1 + alpha F^+(lambda^2)) for rank-one models.
cplx g_alpha(const PerturbationModel& model, double lambda,
             const QuadConfig& cfg);
cplx g_alpha(double alpha, cplx f_plus);

struct SpectralCurve {
  std::vector<double> lambdas;
  std::vector<Eigen::MatrixXcd> F_plus;
  std::vector<Eigen::MatrixXcd> F_minus;
  std::vector<Eigen::MatrixXcd> A_plus;
  std::vector<Eigen::MatrixXcd> G_plus;
  std::vector<double> abs_det;         // |det A^+| (= |det A^-|)
  std::vector<std::string> failures;   // empty when the point succeeded
  std::vector<bool> jump_flags;        // continuity guard
  double det_margin = 0.0;
  double c0_target = 0.0;
  bool pass = false;
  bool has_high_energy_check = false;
  double high_energy_f_slope = 0.0;
  double high_energy_g_slope = 0.0;
  bool high_energy_pass = false;
};

SpectralCurve spectral_condition_scan(const PerturbationModel& model,
                                      const std::vector<double>& lambdas,
                                      double c0_target, const QuadConfig& cfg,
                                      int workers = 1);

// <G_0 phi, phi> with the Newton kernel; d >= 3.
double a0_coefficient(const PotentialProfile& phi, const QuadConfig& cfg);
// -(1/2) <|x-y| phi, phi> (d = 1) or -(1/2pi) <log|x-y| phi, phi> (d = 2).
double b1_coefficient(const PotentialProfile& phi, const QuadConfig& cfg);

enum class LowEnergyLaw { constant_d3, inverse_lambda_d1, log_lambda_d2 };
const char* to_string(LowEnergyLaw law);

struct LowEnergyFit {
  LowEnergyLaw law = LowEnergyLaw::constant_d3;
  // d = 1: lim lambda F;  d = 2: coefficient of -log(lambda) in F;
  // d >= 3: lim F.
  cplx leading;
  double leading_error = 0.0;
  // d = 1, 2: b_1;  d >= 3: lim (F - a_0) / lambda.
  cplx secondary;
  double remainder_slope = 0.0;
  double fit_r2 = 0.0;
  bool accepted = false;
  double lambda0_used = 0.0;
  std::vector<double> lambdas;
  std::vector<double> remainder_abs;
};

// Low-energy expansion of the (1,1) entry of F (the scalar F for rank-one
// models).  fit_grid must lie in (0, lambda0] and span two decades; an
// empty grid means lambda0 * 2^{-k}, k = 0..10.  lambda0 <= 0 selects it
// automatically.
LowEnergyFit low_energy_fit(const PerturbationModel& model, Sign sign,
                            std::vector<double> fit_grid,
                            const QuadConfig& cfg, double lambda0 = 0.0);

// Halves lambda0 from 0.1 until the remainder is below 0.2 of the leading
// term on lambda0 * 2^{-k}, k = 0..10 (at most 6 halvings).
double select_lambda0(const PerturbationModel& model, const QuadConfig& cfg);

// Rotates a finite-rank family so that psi_1 carries all the mass.
PerturbationModel orthonormalize_psi(const PerturbationModel& model);

struct G11Leading {
  cplx value;
  double error = 0.0;
  std::vector<double> lambdas;
  std::vector<cplx> g11;
  // max_j |g_{1j}(lambda)|, j != 1, along the sequence.
  std::vector<double> off_diagonal;
};

// lim g_11^sign / lambda (d = 1) or lim g_11^sign log(lambda) (d = 2),
// extrapolated along lambda0 2^{-k}, k = 4..10.
G11Leading g11_leading(const PerturbationModel& model, Sign sign,
                       const QuadConfig& cfg, double lambda0 = 0.1);

struct HighEnergyReport {
  double f_slope = 0.0;
  double f_r2 = 0.0;
  double g_slope = 0.0;
  double g_r2 = 0.0;
  bool g_identically_constant = false;
  bool pass = false;
  int points = 0;
};

// Slopes of log|F| and log|d g / d lambda| against log lambda over
// lambda >= 1 of the curve.
HighEnergyReport high_energy_decay_check(const SpectralCurve& curve);

}  // namespace rkwave

#endif  // RKWAVE_SPECTRAL_HPP_
