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

#include "rkwave/fields.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "rkwave/errors.hpp"

namespace rkwave {

namespace {

std::size_t product(const std::vector<GridAxis>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::size_t>(a.count);
  return n;
}

}  // namespace

SampledField::SampledField(std::vector<GridAxis> axes, std::vector<cplx> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  if (axes_.empty() || axes_.size() > 3) {
    throw PreconditionError("SampledField needs 1 to 3 axes");
  }
  if (product(axes_) != values_.size()) {
    throw PreconditionError("SampledField: value count does not match grid");
  }
}

SampledField SampledField::zeros(std::vector<GridAxis> axes) {
  const std::size_t n = product(axes);
  return SampledField(std::move(axes), std::vector<cplx>(n));
}

SampledField SampledField::line(double origin, double spacing, int count) {
  return zeros({GridAxis{origin, spacing, count}});
}

SampledField SampledField::square(double origin, double spacing, int count) {
  GridAxis a{origin, spacing, count};
  return zeros({a, a});
}

double SampledField::cell_volume() const {
  double v = 1.0;
  for (const auto& a : axes_) v *= a.spacing;
  return v;
}

void SampledField::point(std::size_t i, double* x) const {
  for (int k = dim() - 1; k >= 0; --k) {
    const auto& a = axes_[k];
    const std::size_t n = static_cast<std::size_t>(a.count);
    x[k] = a.at(static_cast<int>(i % n));
    i /= n;
  }
}

bool SampledField::same_grid(const SampledField& other) const {
  if (axes_.size() != other.axes_.size()) return false;
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    const auto& a = axes_[k];
    const auto& b = other.axes_[k];
    if (a.count != b.count) return false;
    if (std::fabs(a.origin - b.origin) > 1e-12 * (1.0 + std::fabs(a.origin)))
      return false;
    if (std::fabs(a.spacing - b.spacing) > 1e-12 * a.spacing) return false;
  }
  return true;
}

double SampledField::l2_norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return std::sqrt(s * cell_volume());
}

void SampledField::validate() const {
  for (const auto& a : axes_) {
    if (!(a.spacing > 0.0) || a.count < 1 || !std::isfinite(a.origin)) {
      throw PreconditionError("SampledField: invalid axis");
    }
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw PreconditionError("SampledField: non-finite sample");
    }
  }
}

FieldNorms weighted_norms(const std::vector<cplx>& values,
                          const std::vector<double>& weights,
                          const std::vector<double>& ps,
                          const std::vector<bool>& outer_layer) {
  if (values.size() != weights.size()) {
    throw PreconditionError("weighted_norms: size mismatch");
  }
  FieldNorms out;
  out.p = ps;
  const std::size_t n = values.size();
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(values[i]);
  for (double v : mag) out.sup = std::max(out.sup, v);
  for (double p : ps) {
    if (!(p >= 1.0)) throw PreconditionError("norm exponent must be >= 1");
    if (std::isinf(p)) {
      out.lp.push_back(out.sup);
      continue;
    }
    // Scaled by the sup to keep large p finite.
    double s = 0.0;
    if (out.sup > 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        s += std::pow(mag[i] / out.sup, p) * weights[i];
      }
    }
    out.lp.push_back(out.sup * std::pow(s, 1.0 / p));
  }
  // sup_t t |{|g| > t}|: just below each level v_k the set holds every
  // sample at least as large.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mag[a] > mag[b] || (mag[a] == mag[b] && a < b);
  });
  double measure = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    measure += weights[order[k]];
    const bool last_of_level =
        k + 1 == n || mag[order[k + 1]] < mag[order[k]];
    if (last_of_level) out.weak_l1 = std::max(out.weak_l1, mag[order[k]] * measure);
  }
  if (!outer_layer.empty()) {
    double total = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += mag[i] * weights[i];
      if (outer_layer[i]) tail += mag[i] * weights[i];
    }
    out.tail_fraction = total > 0.0 ? tail / total : 0.0;
    out.tail_warning = out.tail_fraction > 0.01;
  }
  return out;
}

FieldNorms lp_norms(const SampledField& g, const std::vector<double>& ps) {
  g.validate();
  const std::size_t n = g.size();
  std::vector<double> w(n, g.cell_volume());
  std::vector<bool> outer(n, false);
  std::vector<double> x(g.dim());
  for (std::size_t i = 0; i < n; ++i) {
    g.point(i, x.data());
    for (int k = 0; k < g.dim(); ++k) {
      const auto& a = g.axes()[k];
      const double lo = a.at(0), hi = a.at(a.count - 1);
      const double band = 0.05 * (hi - lo);
      if (x[k] < lo + band || x[k] > hi - band) outer[i] = true;
    }
  }
  return weighted_norms(g.values(), w, ps, outer);
}

std::vector<NormReport> norm_reports(const SampledField& tf,
                                     const SampledField& f,
                                     const std::vector<double>& ps,
                                     double family_parameter) {
  std::vector<double> all = ps;
  all.push_back(1.0);
  const auto nt = lp_norms(tf, all);
  const auto nf = lp_norms(f, all);
  const double f1 = nf.lp.back();
  if (!(f1 > 0.0)) throw PreconditionError("norm_reports: f has zero L1 norm");
  std::vector<NormReport> out;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    NormReport r;
    r.p = ps[k];
    r.ratio = nf.lp[k] > 0.0 ? nt.lp[k] / nf.lp[k] : 0.0;
    r.weak_l1 = nt.weak_l1 / f1;
    r.family_parameter = family_parameter;
    out.push_back(r);
  }
  return out;
}

}  // namespace rkwave
