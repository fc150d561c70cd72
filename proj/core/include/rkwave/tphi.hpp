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

#ifndef RKWAVE_TPHI_HPP_
#define RKWAVE_TPHI_HPP_

#include <functional>
#include <vector>

#include "rkwave/fields.hpp"
#include "rkwave/profile.hpp"
#include "rkwave/quadrature.hpp"

namespace rkwave {

// Radial samples at cell centers r_k = (k + 1/2) step; the cells tile
// [0, outer()].
struct RadialField {
  double step = 0.1;
  std::vector<cplx> values;

  double radius(std::size_t k) const { return step * (static_cast<double>(k) + 0.5); }
  double outer() const { return step * static_cast<double>(values.size()); }
  // Linear interpolation; constant below the first center, zero past outer().
  cplx at(double r) const;
};

// int f(y) / (r^2 - |y|^2) dy over the plane for radial f with profile
// fbar supported in [0, rmax].
double centered_pv(const std::function<double(double)>& fbar, double r,
                   double rmax, const QuadConfig& cfg);

// int delta(r^2 - |y|^2) f(y) dy = (1/(2r)) times the integral of f over
// the circle |y| = r.
double centered_delta(const std::function<double(double, double)>& f,
                      double r, const QuadConfig& cfg);

// Centered kernel -(1/(4 pi^2)) [PV 1/(|x|^2-|y|^2) - i pi delta(|x|^2-|y|^2)]
// applied to a radial field.
RadialField centered_apply(const RadialField& g, const QuadConfig& cfg);

// Radial convolution of a centered radial profile with a radial field,
// sampled on the grid of `g`.
RadialField radial_convolve(const PotentialProfile& phi, const RadialField& g);

// phi * K (phi-reflected * f) for f radial about the profile center.
RadialField tphi_apply_radial(const PotentialProfile& phi, const RadialField& f,
                              const QuadConfig& cfg);

// General d = 2 fields on a square grid.
SampledField tphi_apply(const PotentialProfile& phi, const SampledField& f,
                        const QuadConfig& cfg);

struct TphiFamilyReport {
  std::vector<double> radii;
  std::vector<double> l1_ratio;
  std::vector<double> weak_l1_ratio;
  double weak_max_over_min = 0.0;
  bool l1_monotone = false;
};

// Thin rings 1_{t <= |y| <= t+1} about the profile center.
TphiFamilyReport tphi_ring_family(const PotentialProfile& phi,
                                  const std::vector<double>& radii,
                                  const QuadConfig& cfg, double step = 0.1);

}  // namespace rkwave

#endif  // RKWAVE_TPHI_HPP_
