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

// Rank-one and finite-rank perturbations H = H_0 + alpha sum_a <., psi_a> psi_a.

#ifndef RKWAVE_MODEL_HPP_
#define RKWAVE_MODEL_HPP_

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "rkwave/correlation.hpp"
#include "rkwave/profile.hpp"

namespace rkwave {

// Radial kernel family integrated against pair correlations.
enum class KernelFamily {
  full,         // R_0^sign(lambda^2)
  remainder,    // R_0^sign minus its low-energy leading terms
  fundamental,  // -r/2, -(1/2pi) log r, or the d >= 3 Newton kernel
};

class PerturbationModel {
 public:
  static PerturbationModel rank_one(double alpha, PotentialProfile phi);
  static PerturbationModel finite_rank(std::vector<PotentialProfile> profiles);

  bool is_rank_one() const { return rank_one_; }
  // Coupling constant; 1 for finite-rank models.
  double alpha() const { return alpha_; }
  int size() const { return static_cast<int>(base_.size()); }
  int dim() const { return base_.front().dim(); }

  const std::vector<PotentialProfile>& base() const { return base_; }
  // Effective profiles psi_a = sum_j mixing(a, j) phi_j.
  const Eigen::MatrixXd& mixing() const { return mixing_; }
  PerturbationModel with_mixing(const Eigen::MatrixXd& q) const;
  PerturbationModel with_alpha(double alpha) const;

  Eigen::VectorXd masses() const;
  // Number of effective profiles with |mass| > 1e-10.
  int k0() const;
  double sigma() const;

  double value(int a, const double* x) const;
  // d = 1 Fourier transform of psi_a.
  cplx fourier(int a, double xi) const;
  // Radial transform of psi_a about the common center (d >= 2).
  double radial_fourier(int a, double k) const;
  // Gram matrix of the effective profiles.
  Eigen::MatrixXd gram() const;

  // Correlation of base profiles i, j (built once, shared between copies).
  const CorrelationTable& correlation(int i, int j) const;
  // Matrix of effective pair integrals  int int K(|x-y|) psi_b(y) psi_a(x).
  Eigen::MatrixXcd pair_matrix(KernelFamily family, Sign sign, double lambda,
                               const QuadConfig& cfg) const;
  Eigen::MatrixXcd F(Sign sign, double lambda, const QuadConfig& cfg) const {
    return pair_matrix(KernelFamily::full, sign, lambda, cfg);
  }

  // Validates profile conditions and, for finite rank, orthonormality.
  void validate() const;

  std::string describe() const;

 private:
  struct Cache;
  bool rank_one_ = true;
  double alpha_ = 1.0;
  std::vector<PotentialProfile> base_;
  Eigen::MatrixXd mixing_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace rkwave

#endif  // RKWAVE_MODEL_HPP_
