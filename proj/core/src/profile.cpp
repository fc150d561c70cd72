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

#include "rkwave/profile.hpp"

#include <algorithm>
#include <boost/math/interpolators/makima.hpp>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "rkwave/errors.hpp"
#include "rkwave/quadrature.hpp"
#include "rkwave/resolvent.hpp"
#include "rkwave/specfun.hpp"

namespace rkwave {

struct SampleTable {
  using Interp = boost::math::interpolators::makima<std::vector<double>>;
  std::unique_ptr<Interp> interp;
  std::vector<double> x;
  double x_lo = 0.0, x_hi = 0.0;

  double operator()(double t) const {
    if (t < x_lo || t > x_hi) return 0.0;
    return (*interp)(t);
  }
};

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kSmoothInfinite = 1000;

double sphere_area(int d) {
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

double ball_volume(int d, double a) {
  return std::pow(kPi, 0.5 * d) * std::pow(a, d) / std::tgamma(0.5 * d + 1.0);
}

std::vector<double> pad_center(int d, std::vector<double> c) {
  if (c.empty()) c.assign(d, 0.0);
  if (static_cast<int>(c.size()) != d) {
    throw DomainError("profile center must have d coordinates");
  }
  return c;
}

QuadConfig tight() {
  QuadConfig q;
  q.abs_tol = 1e-15;
  q.rel_tol = 1e-13;
  q.max_panels = 20000;
  return q;
}

}  // namespace

const char* to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::gaussian: return "gaussian";
    case ProfileKind::box: return "box";
    case ProfileKind::mexican_hat: return "mexican_hat";
    case ProfileKind::sampled: return "sampled";
  }
  return "?";
}

ProfileKind profile_kind_from_string(const std::string& name) {
  if (name == "gaussian") return ProfileKind::gaussian;
  if (name == "box") return ProfileKind::box;
  if (name == "mexican_hat") return ProfileKind::mexican_hat;
  if (name == "sampled") return ProfileKind::sampled;
  throw DomainError("unknown profile kind '" + name + "'");
}

void load_samples(const std::string& path, std::vector<double>& x,
                  std::vector<double>& v) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open sampled profile '" + path + "'");
  x.clear();
  v.clear();
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a, b;
    if (line.empty() || line[0] == '#') continue;
    if (!(ls >> a >> b)) {
      if (x.empty()) continue;  // header
      throw DomainError("malformed line in '" + path + "': " + line);
    }
    x.push_back(a);
    v.push_back(b);
  }
}

double PotentialProfile::raw(double t) const {
  switch (kind_) {
    case ProfileKind::gaussian: {
      const double s = params_[0];
      return std::exp(-0.5 * t * t / (s * s));
    }
    case ProfileKind::mexican_hat: {
      const double s = params_[0];
      const double u = t * t / (s * s);
      return (d_ - u) * std::exp(-0.5 * u);
    }
    case ProfileKind::box:
      return std::fabs(t) <= params_[0] ? 1.0 : 0.0;
    case ProfileKind::sampled:
      return (*samples_)(t);
  }
  return 0.0;
}

double PotentialProfile::operator()(const double* x) const {
  if (d_ == 1) return scale_ * raw(x[0] - center_[0]);
  double r2 = 0.0;
  for (int i = 0; i < d_; ++i) r2 += (x[i] - center_[i]) * (x[i] - center_[i]);
  return scale_ * raw(std::sqrt(r2));
}

double PotentialProfile::at(double x) const {
  if (d_ != 1) throw DomainError("PotentialProfile::at is for d = 1");
  return scale_ * raw(x - center_[0]);
}

double PotentialProfile::radial(double rho) const {
  return scale_ * raw(rho);
}

double PotentialProfile::radial_fourier(double k) const {
  if (!symmetric_) {
    throw DomainError("radial_fourier needs a symmetric profile");
  }
  k = std::fabs(k);
  switch (kind_) {
    case ProfileKind::gaussian: {
      const double s = params_[0];
      return scale_ * std::pow(2.0 * kPi * s * s, 0.5 * d_) *
             std::exp(-0.5 * s * s * k * k);
    }
    case ProfileKind::mexican_hat: {
      const double s = params_[0];
      return scale_ * s * s * k * k * std::pow(2.0 * kPi * s * s, 0.5 * d_) *
             std::exp(-0.5 * s * s * k * k);
    }
    case ProfileKind::box: {
      const double a = params_[0];
      const double z = k * a;
      if (z < 1e-8) return scale_ * ball_volume(d_, a);
      // (2 pi a / k)^{d/2} J_{d/2}(k a)
      return scale_ * std::pow(2.0 * kPi * a / k, 0.5 * d_) *
             detail::jv(d_, z);
    }
    case ProfileKind::sampled: {
      const auto q = tight();
      const auto& tab = *samples_;
      std::vector<double> br(tab.x.begin(), tab.x.end());
      if (d_ == 1) {
        auto f = [&](double t) { return scale_ * tab(t) * std::cos(k * t); };
        return integrate_gk<double>(f, tab.x_lo, tab.x_hi, q, br).value;
      }
      const double area = sphere_area(d_);
      auto f = [&](double rho) {
        const double z = k * rho;
        // angular average of e^{i k.x} over the sphere: Gamma(d/2)(2/z)^{(d-2)/2} J_{(d-2)/2}(z)
        double avg;
        if (d_ == 2) {
          avg = bessel_j(BesselOrder(0), z);
        } else if (d_ == 3) {
          avg = z < 1e-6 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
        } else {
          avg = std::tgamma(0.5 * d_) * detail::j_over_pow(d_ - 2, z) *
                std::pow(2.0, 0.5 * (d_ - 2));
        }
        return scale_ * tab(rho) * avg * area * std::pow(rho, d_ - 1);
      };
      return integrate_gk<double>(f, 0.0, tab.x_hi, q, br).value;
    }
  }
  return 0.0;
}

cplx PotentialProfile::fourier(double xi) const {
  if (d_ != 1) throw DomainError("PotentialProfile::fourier is for d = 1");
  if (symmetric_) {
    return std::exp(cplx(0.0, -xi * center_[0])) * radial_fourier(xi);
  }
  const auto& tab = *samples_;
  std::vector<double> br(tab.x.begin(), tab.x.end());
  auto f = [&](double t) {
    return scale_ * tab(t) * std::exp(cplx(0.0, -xi * (t + center_[0])));
  };
  return integrate_gk<cplx>(f, tab.x_lo, tab.x_hi, tight(), br).value;
}

void PotentialProfile::finish() {
  center_ = pad_center(d_, center_);
  double raw_mass = 0.0, raw_sq = 0.0;
  switch (kind_) {
    case ProfileKind::gaussian: {
      const double s = params_[0];
      raw_mass = std::pow(2.0 * kPi * s * s, 0.5 * d_);
      raw_sq = std::pow(kPi * s * s, 0.5 * d_);
      radius_ = std::sqrt(2.0 * std::log(1e17)) * s;
      decay_ = kInf;
      smooth_ = kSmoothInfinite;
      break;
    }
    case ProfileKind::mexican_hat: {
      const double s = params_[0];
      raw_mass = 0.0;
      raw_sq = std::pow(s, d_) * std::pow(kPi, 0.5 * d_) * d_ * (d_ + 2) / 4.0;
      radius_ = 10.0 * s;
      decay_ = kInf;
      smooth_ = kSmoothInfinite;
      break;
    }
    case ProfileKind::box: {
      const double a = params_[0];
      raw_mass = ball_volume(d_, a);
      raw_sq = raw_mass;
      radius_ = a;
      kinks_ = d_ == 1 ? std::vector<double>{center_[0] - a, center_[0] + a}
                       : std::vector<double>{a};
      decay_ = kInf;
      smooth_ = 0;
      break;
    }
    case ProfileKind::sampled: {
      const auto& tab = *samples_;
      const auto q = tight();
      std::vector<double> br(tab.x.begin(), tab.x.end());
      if (d_ == 1) {
        raw_mass = integrate_gk<double>([&](double t) { return tab(t); },
                                        tab.x_lo, tab.x_hi, q, br).value;
        raw_sq = integrate_gk<double>(
                     [&](double t) { const double v = tab(t); return v * v; },
                     tab.x_lo, tab.x_hi, q, br).value;
        radius_ = std::max(std::fabs(tab.x_lo), std::fabs(tab.x_hi));
        for (double x : tab.x) kinks_.push_back(x + center_[0]);
      } else {
        const double area = sphere_area(d_);
        raw_mass = integrate_gk<double>(
                       [&](double r) { return area * std::pow(r, d_ - 1) * tab(r); },
                       0.0, tab.x_hi, q, br).value;
        raw_sq = integrate_gk<double>(
                     [&](double r) {
                       const double v = tab(r);
                       return area * std::pow(r, d_ - 1) * v * v;
                     },
                     0.0, tab.x_hi, q, br).value;
        radius_ = tab.x_hi;
        kinks_ = tab.x;
      }
      decay_ = kInf;
      smooth_ = 1;
      break;
    }
  }
  if (!(raw_sq > 0.0)) throw DomainError("profile has zero L2 norm");
  raw_l2_ = std::sqrt(raw_sq);
  scale_ = 1.0 / raw_l2_;
  mass_ = raw_mass * scale_;
  l2_ = raw_l2_ * scale_;
  if (d_ == 1) {
    if (kind_ == ProfileKind::sampled) {
      lo_ = center_[0] + samples_->x_lo;
      hi_ = center_[0] + samples_->x_hi;
    } else {
      lo_ = center_[0] - radius_;
      hi_ = center_[0] + radius_;
    }
  }
}

PotentialProfile PotentialProfile::gaussian(int d, double width,
                                            std::vector<double> center) {
  require_dimension(d);
  if (!(width > 0.0)) throw DomainError("gaussian width must be > 0");
  PotentialProfile p;
  p.d_ = d;
  p.kind_ = ProfileKind::gaussian;
  p.params_ = {width};
  p.center_ = std::move(center);
  p.finish();
  return p;
}

PotentialProfile PotentialProfile::mexican_hat(int d, double width,
                                               std::vector<double> center) {
  require_dimension(d);
  if (!(width > 0.0)) throw DomainError("mexican_hat width must be > 0");
  PotentialProfile p;
  p.d_ = d;
  p.kind_ = ProfileKind::mexican_hat;
  p.params_ = {width};
  p.center_ = std::move(center);
  p.finish();
  return p;
}

PotentialProfile PotentialProfile::box(int d, double half_width,
                                       std::vector<double> center) {
  require_dimension(d);
  if (!(half_width > 0.0)) throw DomainError("box half-width must be > 0");
  PotentialProfile p;
  p.d_ = d;
  p.kind_ = ProfileKind::box;
  p.params_ = {half_width};
  p.center_ = std::move(center);
  p.finish();
  return p;
}

PotentialProfile PotentialProfile::sampled(int d, std::vector<double> x,
                                           std::vector<double> v,
                                           std::vector<double> center) {
  require_dimension(d);
  if (x.size() != v.size() || x.size() < 4) {
    throw DomainError("sampled profile needs >= 4 (x, value) pairs");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) {
      throw DomainError("sampled profile abscissae must be increasing");
    }
  }
  for (double y : v) {
    if (!std::isfinite(y)) throw DomainError("sampled profile has non-finite value");
  }
  if (d >= 2 && x.front() != 0.0) {
    throw DomainError("radial samples must start at radius 0");
  }
  PotentialProfile p;
  p.d_ = d;
  p.kind_ = ProfileKind::sampled;
  p.center_ = std::move(center);
  bool sym = d >= 2;
  if (d == 1) {
    sym = true;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n && sym; ++i) {
      sym = std::fabs(x[i] + x[n - 1 - i]) <= 1e-12 * (1.0 + std::fabs(x[i])) &&
            std::fabs(v[i] - v[n - 1 - i]) <= 1e-14 * (1.0 + std::fabs(v[i]));
    }
  }
  p.symmetric_ = sym;
  auto tab = std::make_shared<SampleTable>();
  tab->x = x;
  tab->x_lo = x.front();
  tab->x_hi = x.back();
  const double left = d >= 2 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  tab->interp = std::make_unique<SampleTable::Interp>(
      std::move(x), std::move(v), left,
      std::numeric_limits<double>::quiet_NaN());
  p.samples_ = std::move(tab);
  p.finish();
  return p;
}

PotentialProfile PotentialProfile::from_spec(const ProfileSpec& spec) {
  auto need = [&](std::size_t n) {
    if (spec.params.size() < n) {
      throw DomainError(std::string("profile kind ") + to_string(spec.kind) +
                        " needs a width parameter");
    }
  };
  PotentialProfile p = [&] {
    switch (spec.kind) {
      case ProfileKind::gaussian:
        need(1);
        return gaussian(spec.d, spec.params[0], spec.center);
      case ProfileKind::mexican_hat:
        need(1);
        return mexican_hat(spec.d, spec.params[0], spec.center);
      case ProfileKind::box:
        need(1);
        return box(spec.d, spec.params[0], spec.center);
      case ProfileKind::sampled:
        break;
    }
    std::vector<double> x = spec.sample_x, v = spec.sample_v;
    if (x.empty() && !spec.source.empty()) load_samples(spec.source, x, v);
    return sampled(spec.d, std::move(x), std::move(v), spec.center);
  }();
  p.source_ = spec.source;
  if (spec.decay_exponent) p.decay_ = *spec.decay_exponent;
  if (spec.smoothness_order) p.smooth_ = *spec.smoothness_order;
  return p;
}

void PotentialProfile::validate() const {
  if (!(decay_ > d_ + 2.0)) {
    std::ostringstream os;
    os << "decay condition violated: |phi(x)| <~ <x>^{-delta} needs delta > d + 2 = "
       << d_ + 2 << ", got delta = " << decay_;
    throw DomainError(os.str());
  }
  if (d_ >= 2 && smooth_ < d_ / 2) {
    std::ostringstream os;
    os << "smoothness condition violated: beta_0 = " << smooth_
       << " must be >= floor(d/2) = " << d_ / 2;
    throw DomainError(os.str());
  }
  if (std::fabs(l2_ - 1.0) > 1e-10) {
    throw NumericError("profile normalization drifted from 1");
  }
}

PotentialProfile PotentialProfile::translated(
    const std::vector<double>& shift) const {
  if (static_cast<int>(shift.size()) != d_) {
    throw DomainError("translation must have d coordinates");
  }
  PotentialProfile p = *this;
  for (int i = 0; i < d_; ++i) p.center_[i] += shift[i];
  if (d_ == 1) {
    p.lo_ += shift[0];
    p.hi_ += shift[0];
    for (double& k : p.kinks_) k += shift[0];
  }
  return p;
}

std::string PotentialProfile::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(kind_) << "(d=" << d_;
  if (!params_.empty()) os << ",width=" << params_[0];
  os << ",center=[";
  for (std::size_t i = 0; i < center_.size(); ++i) {
    os << (i ? "," : "") << center_[i];
  }
  os << "]";
  if (!source_.empty()) os << ",source=" << source_;
  os << ")";
  return os.str();
}

}  // namespace rkwave
