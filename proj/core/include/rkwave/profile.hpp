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

// Potential profiles phi_j: closed-form families plus sampled data.

#ifndef RKWAVE_PROFILE_HPP_
#define RKWAVE_PROFILE_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rkwave/common.hpp"

namespace rkwave {

enum class ProfileKind { gaussian, box, mexican_hat, sampled };

const char* to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

// Declarative description, as read from a config file.
struct ProfileSpec {
  ProfileKind kind = ProfileKind::gaussian;
  int d = 1;
  // gaussian / mexican_hat: {width}; box: {half_width}; sampled: unused.
  std::vector<double> params;
  std::vector<double> center;
  // sampled: abscissae (d = 1) or radii (d >= 2) and values.
  std::vector<double> sample_x;
  std::vector<double> sample_v;
  std::string source;
  std::optional<double> decay_exponent;
  std::optional<int> smoothness_order;
};

// Reads a two-column whitespace or comma separated file.
void load_samples(const std::string& path, std::vector<double>& x,
                  std::vector<double>& v);

// An L2-normalized real profile.  In d >= 2 every profile is radial about
// its center; in d = 1 sampled profiles may be arbitrary.
class PotentialProfile {
 public:
  static PotentialProfile gaussian(int d, double width,
                                   std::vector<double> center = {});
  static PotentialProfile mexican_hat(int d, double width,
                                      std::vector<double> center = {});
  static PotentialProfile box(int d, double half_width,
                              std::vector<double> center = {});
  static PotentialProfile sampled(int d, std::vector<double> x,
                                  std::vector<double> v,
                                  std::vector<double> center = {});
  static PotentialProfile from_spec(const ProfileSpec& spec);

  int dim() const { return d_; }
  ProfileKind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }
  const std::vector<double>& center() const { return center_; }

  // Point evaluation; x has dim() coordinates.
  double operator()(const double* x) const;
  double at(double x) const;  // d = 1 convenience
  // Centered radial profile p with phi(x) = p(|x - c|); d >= 2 only.
  double radial(double rho) const;

  // Centered radial Fourier transform P(k), phi_hat(xi) = e^{-i xi.c} P(|xi|)
  // with phi_hat(xi) = int e^{-i x.xi} phi(x) dx.  d >= 2, or d = 1 when
  // the profile is symmetric about its center.
  double radial_fourier(double k) const;
  // Full transform for d = 1.
  cplx fourier(double xi) const;
  bool symmetric() const { return symmetric_; }

  // d = 1: support interval (absolute).  d >= 2: radius about the center.
  // Beyond it |phi| < 1e-16 * max|phi|.
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  double support_radius() const { return radius_; }
  // Points where phi is not smooth (d = 1 absolute, d >= 2 radial).
  const std::vector<double>& kinks() const { return kinks_; }

  double decay_exponent() const { return decay_; }
  int smoothness_order() const { return smooth_; }
  double mass() const { return mass_; }
  double l2_norm() const { return l2_; }
  double raw_l2_norm() const { return raw_l2_; }
  const std::string& source() const { return source_; }

  void set_decay_exponent(double delta) { decay_ = delta; }
  void set_smoothness_order(int beta) { smooth_ = beta; }

  // Condition checks: decay delta > d + 2 and beta_0 >= floor(d/2).
  void validate() const;

  PotentialProfile translated(const std::vector<double>& shift) const;

  std::string describe() const;

 private:
  PotentialProfile() = default;
  void finish();
  double raw(double t) const;  // unnormalized, centered coordinate

  int d_ = 1;
  ProfileKind kind_ = ProfileKind::gaussian;
  std::vector<double> params_;
  std::vector<double> center_;
  std::shared_ptr<const struct SampleTable> samples_;
  double scale_ = 1.0;
  double lo_ = 0.0, hi_ = 0.0, radius_ = 0.0;
  std::vector<double> kinks_;
  double decay_ = 0.0;
  int smooth_ = 0;
  double mass_ = 0.0;
  double l2_ = 0.0;
  double raw_l2_ = 0.0;
  bool symmetric_ = true;
  std::string source_;
};

}  // namespace rkwave

#endif  // RKWAVE_PROFILE_HPP_
