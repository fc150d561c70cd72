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

#ifndef RKWAVE_FIELDS_HPP_
#define RKWAVE_FIELDS_HPP_

#include <cstddef>
#include <limits>
#include <vector>

#include "rkwave/common.hpp"

namespace rkwave {

struct GridAxis {
  double origin = 0.0;
  double spacing = 1.0;
  int count = 0;

  double at(int i) const { return origin + spacing * i; }
};

// Complex samples on a tensor grid, last axis fastest.
class SampledField {
 public:
  SampledField() = default;
  SampledField(std::vector<GridAxis> axes, std::vector<cplx> values);

  static SampledField zeros(std::vector<GridAxis> axes);
  static SampledField line(double origin, double spacing, int count);
  static SampledField square(double origin, double spacing, int count);

  int dim() const { return static_cast<int>(axes_.size()); }
  const std::vector<GridAxis>& axes() const { return axes_; }
  std::size_t size() const { return values_.size(); }
  double cell_volume() const;

  // Coordinates of sample i, written to x[0..dim).
  void point(std::size_t i, double* x) const;

  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }
  cplx& operator[](std::size_t i) { return values_[i]; }
  cplx operator[](std::size_t i) const { return values_[i]; }

  bool same_grid(const SampledField& other) const;
  double l2_norm() const;

  // Throws PreconditionError on non-finite values or bad axes.
  void validate() const;

 private:
  std::vector<GridAxis> axes_;
  std::vector<cplx> values_;
};

inline constexpr double kInfP = std::numeric_limits<double>::infinity();

struct FieldNorms {
  std::vector<double> p;
  std::vector<double> lp;
  double sup = 0.0;
  double weak_l1 = 0.0;
  // Share of the L^1 mass in the outer tenth of the domain.
  double tail_fraction = 0.0;
  bool tail_warning = false;
};

// Norms of values with per-sample measure weights.
FieldNorms weighted_norms(const std::vector<cplx>& values,
                          const std::vector<double>& weights,
                          const std::vector<double>& ps,
                          const std::vector<bool>& outer_layer = {});

// Riemann-sum norms of a field; p = kInfP gives the sup norm.
FieldNorms lp_norms(const SampledField& g, const std::vector<double>& ps);

struct NormReport {
  double p = 1.0;
  double ratio = 0.0;
  double weak_l1 = 0.0;
  double family_parameter = 0.0;
};

std::vector<NormReport> norm_reports(const SampledField& tf,
                                     const SampledField& f,
                                     const std::vector<double>& ps,
                                     double family_parameter);

}  // namespace rkwave

#endif  // RKWAVE_FIELDS_HPP_
