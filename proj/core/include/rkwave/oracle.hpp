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

#ifndef RKWAVE_ORACLE_HPP_
#define RKWAVE_ORACLE_HPP_

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "rkwave/fields.hpp"
#include "rkwave/model.hpp"
#include "rkwave/waveop.hpp"

namespace rkwave {

namespace detail {
class Fft;
}

// Periodic box [-L, L)^d with n points per axis, x_j = -L + j h.
struct GridSpec {
  int d = 1;
  double half_length = 40.0;
  int n = 2048;

  void validate() const;
  double spacing() const { return 2.0 * half_length / n; }
  double coordinate(int j) const { return -half_length + j * spacing(); }
  std::size_t points() const;
  double nyquist() const;
  // Empty field on this grid.
  SampledField field() const;
};

struct DiscretizationReport {
  std::vector<double> grid_mass;
  std::vector<double> continuum_mass;
  // max |<psi_a, psi_b>_grid - delta_ab| before renormalization.
  double orthonormality_drift = 0.0;
  // max |psi| on the box boundary relative to max |psi|.
  double boundary_max = 0.0;
};

// Vectors are in l2 coordinates u_j = h^{d/2} f(x_j), so the Euclidean
// norm is the L2 norm; frequency vectors use the unitary DFT.
class DiscreteModel {
 public:
  static DiscreteModel discretize(const PerturbationModel& model,
                                  const GridSpec& grid);
  static DiscreteModel free(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  int rank() const { return static_cast<int>(phi_.cols()); }
  // The perturbation is coupling() * sum_a psi_a <., psi_a>.
  double coupling() const { return coupling_; }
  const Eigen::VectorXd& symbol() const { return symbol_; }
  const Eigen::MatrixXcd& phi() const { return phi_; }
  const Eigen::MatrixXcd& phi_hat() const { return phi_hat_; }
  const DiscretizationReport& report() const { return report_; }
  // Frequencies where some psi_hat is above 1e-15 of its peak.
  const std::vector<int>& coupled_set() const { return coupled_; }

  Eigen::VectorXcd to_frequency(const Eigen::VectorXcd& u) const;
  Eigen::VectorXcd to_position(const Eigen::VectorXcd& w) const;
  Eigen::VectorXcd to_l2(const SampledField& f) const;
  SampledField to_field(const Eigen::VectorXcd& u) const;

  // Eigenpairs of H restricted to the coupled set (computed once).
  const Eigen::VectorXd& coupled_energies() const;
  const Eigen::MatrixXcd& coupled_vectors() const;

 private:
  struct EigenCache;
  GridSpec grid_;
  double coupling_ = 1.0;
  Eigen::VectorXd symbol_;
  Eigen::MatrixXcd phi_;
  Eigen::MatrixXcd phi_hat_;
  std::vector<int> coupled_;
  DiscretizationReport report_;
  std::shared_ptr<detail::Fft> fft_;
  std::shared_ptr<EigenCache> eig_;
};

// (H_0 - z)^{-1} rhs, or (H - z)^{-1} rhs when `perturbed`.
Eigen::VectorXcd resolvent_direct(const DiscreteModel& dm, cplx z,
                                  const Eigen::VectorXcd& rhs, bool perturbed);

// <(H_0 - z)^{-1} psi_b, psi_a> on the grid.
cplx discrete_pair(const DiscreteModel& dm, int a, int b, cplx z);

struct BoundaryValue {
  cplx value;
  cplx at_eps;
  cplx at_half_eps;
};

// Linear extrapolation of <(H_0 - lambda^2 - i eps)^{-1} psi_b, psi_a> from
// eps and eps/2 to eps = 0.
BoundaryValue boundary_value(const DiscreteModel& dm, int a, int b,
                             double lambda, double eps);

struct AkReport {
  double residual = 0.0;
  double abs_det = 0.0;
  // N = 1 only: scalar form versus matrix form; negative otherwise.
  double scalar_difference = -1.0;
};

AkReport ak_identity_check(const DiscreteModel& dm, cplx z);

enum class Averaging { window, abel };
const char* to_string(Averaging a);
Averaging averaging_from_string(const std::string& name);

struct TimeLimitOptions {
  Averaging averaging = Averaging::window;
  // Relative amplitude below which frequencies count as absent.
  double band_threshold = 1e-8;
  // d = 2 splitting: largest step and Gauss nodes over [T, 2T].
  double max_step = 0.01;
  int average_nodes = 32;
};

struct TimeLimitResult {
  Eigen::VectorXcd output;
  double T = 0.0;
  double band_limit = 0.0;
  double max_T = 0.0;
  double isometry_drift = 0.0;
};

// Average of e^{-i tau H} e^{i tau H_0} f over tau in [T, 2T] (window) or
// with Abel weights of rate 1/T; f in l2 coordinates.
TimeLimitResult wave_operator_time_limit(const DiscreteModel& dm,
                                         const Eigen::VectorXcd& f, double T,
                                         const TimeLimitOptions& opt = {});

// Largest admissible T for f: L / (2 v_max) with v_max = 2 k_max.
double max_time(const DiscreteModel& dm, const Eigen::VectorXcd& f,
                double band_threshold = 1e-8);

struct CompareReport {
  double rel_l2_error = 0.0;
  // Error measured against the scattered part (I - W_-) f.
  double rel_to_scattered = 0.0;
  double T = 0.0;
  double t_doubling_difference = 0.0;
  double isometry_drift_time = 0.0;
  double isometry_drift_stationary = 0.0;
  double ak_residual = 0.0;
  double lambda_max = 0.0;
  SampledField stationary;
  SampledField time_limit;
};

// f lives on the grid of `grid`.  T <= 0 uses half the largest admissible
// time so the doubled run still respects the wrap guard.
CompareReport compare_stationary_vs_time(const WaveOpConfig& cfg,
                                         const GridSpec& grid,
                                         const SampledField& f, double T = 0.0,
                                         const TimeLimitOptions& opt = {});

}  // namespace rkwave

#endif  // RKWAVE_ORACLE_HPP_
