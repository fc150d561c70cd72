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

#include "rkwave/waveop.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "fft.hpp"
#include "rkwave/errors.hpp"
#include "rkwave/numerics.hpp"
#include "rkwave/parallel.hpp"
#include "rkwave/specfun.hpp"
#include "rkwave/spectral.hpp"
#include "rkwave/tphi.hpp"

namespace rkwave {

WaveOpConfig WaveOpConfig::make(PerturbationModel model, double lambda0) {
  WaveOpConfig cfg;
  cfg.model = std::move(model);
  cfg.lambda0 = lambda0;
  cfg.chi = CutoffSpec{0.5 * lambda0, lambda0, 8};
  return cfg;
}

void WaveOpConfig::validate() const {
  if (model.size() == 0) throw PreconditionError("wave operator needs a model");
  require_pipeline_dimension(model.dim());
  model.validate();
  if (!(lambda0 > 0.0)) throw PreconditionError("lambda0 must be positive");
  const double tol = 1e-12 * lambda0;
  if (std::fabs(chi.lo - 0.5 * lambda0) > tol ||
      std::fabs(chi.hi - lambda0) > tol) {
    throw PreconditionError("cutoff must switch between lambda0/2 and lambda0");
  }
  chi.validate();
  quad.validate();
}

namespace {

constexpr int kRule = 8;

// Profiles of the model seen as one object.
struct Geometry {
  int d = 1;
  std::vector<double> center;
  double lo = 0.0, hi = 0.0;  // d = 1
  double radius = 0.0;        // d >= 2
  std::vector<double> kinks;
};

Geometry geometry(const PerturbationModel& m) {
  Geometry g;
  g.d = m.dim();
  const auto& base = m.base();
  if (g.d == 1) {
    g.lo = base.front().support_lo();
    g.hi = base.front().support_hi();
    for (const auto& p : base) {
      g.lo = std::min(g.lo, p.support_lo());
      g.hi = std::max(g.hi, p.support_hi());
      g.kinks.insert(g.kinks.end(), p.kinks().begin(), p.kinks().end());
    }
    g.center = {0.5 * (g.lo + g.hi)};
    return g;
  }
  g.center = base.front().center();
  if (g.center.empty()) g.center.assign(g.d, 0.0);
  for (const auto& p : base) {
    std::vector<double> c = p.center();
    if (c.empty()) c.assign(g.d, 0.0);
    for (int k = 0; k < g.d; ++k) {
      if (std::fabs(c[k] - g.center[k]) > 1e-12) {
        throw PreconditionError(
            "profiles in d >= 2 must share a center for the radial assembly");
      }
    }
    g.radius = std::max(g.radius, p.support_radius());
    g.kinks.insert(g.kinks.end(), p.kinks().begin(), p.kinks().end());
  }
  return g;
}

double distance(const double* x, const std::vector<double>& c, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) s += (x[k] - c[k]) * (x[k] - c[k]);
  return std::sqrt(s);
}

// Points grouped by distance to a center.
struct RadiusGroups {
  std::vector<double> radii;
  std::vector<int> index;
  std::vector<cplx> sums;
};

RadiusGroups group_radii(const SampledField& g, const std::vector<double>& c) {
  const int d = g.dim();
  const std::size_t n = g.size();
  std::vector<double> r(n);
  std::vector<double> x(d);
  for (std::size_t i = 0; i < n; ++i) {
    g.point(i, x.data());
    r[i] = distance(x.data(), c, d);
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return r[a] < r[b]; });
  RadiusGroups out;
  out.index.assign(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    if (out.radii.empty() ||
        r[i] - out.radii.back() > 1e-12 * std::max(1.0, r[i])) {
      out.radii.push_back(r[i]);
      out.sums.emplace_back(0.0);
    }
    out.index[i] = static_cast<int>(out.radii.size()) - 1;
    out.sums.back() += g[i];
  }
  return out;
}

// Composite Gauss nodes on sorted breakpoints with panel width <= cap.
void composite_nodes(std::vector<double> breaks, double cap,
                     std::vector<double>& nodes, std::vector<double>& weights) {
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  const auto& rule = gauss_legendre(kRule);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k], b = breaks[k + 1];
    if (!(b > a)) continue;
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / cap)));
    const double w = (b - a) / pieces;
    for (int p = 0; p < pieces; ++p) {
      const double lo = a + p * w;
      for (int q = 0; q < kRule; ++q) {
        nodes.push_back(lo + 0.5 * w * (rule.nodes[q] + 1.0));
        weights.push_back(0.5 * w * rule.weights[q]);
      }
    }
  }
}

// u_a(lambda, x) = (R_0^+(lambda^2) psi_a)(x) at the output points.
class OutputSide {
 public:
  OutputSide(const PerturbationModel& model, const Geometry& geo,
             const SampledField& out, double width_cap)
      : d_(geo.d), n_(model.size()) {
    if (d_ == 1) {
      const auto& ax = out.axes()[0];
      for (int i = 0; i < ax.count; ++i) xs_.push_back(ax.at(i));
      std::vector<double> breaks{geo.lo, geo.hi};
      for (double x : xs_) {
        if (x > geo.lo && x < geo.hi) breaks.push_back(x);
      }
      for (double k : geo.kinks) {
        if (k > geo.lo && k < geo.hi) breaks.push_back(k);
      }
      const double cap = std::min(width_cap, (geo.hi - geo.lo) / 64.0);
      composite_nodes(breaks, cap, nodes_, weights_);
      wpsi_.resize(n_, static_cast<Eigen::Index>(nodes_.size()));
      for (std::size_t m = 0; m < nodes_.size(); ++m) {
        for (int a = 0; a < n_; ++a) {
          wpsi_(a, static_cast<Eigen::Index>(m)) =
              weights_[m] * model.value(a, &nodes_[m]);
        }
      }
      for (double x : xs_) counts_.push_back(count_below(x));
      return;
    }
    groups_ = group_radii(out, geo.center);
    const double rmax = geo.radius;
    std::vector<double> breaks{0.0, rmax};
    for (double s : groups_.radii) {
      if (s > 0.0 && s < rmax) breaks.push_back(s);
    }
    for (double k : geo.kinks) {
      if (k > 0.0 && k < rmax) breaks.push_back(k);
    }
    std::sort(breaks.begin(), breaks.end());
    const double first = breaks.size() > 1 ? breaks[1] : rmax;
    for (int k = 1; k <= 12; ++k) breaks.push_back(first * std::ldexp(1.0, -k));
    const double cap = std::min(width_cap, rmax / 64.0);
    composite_nodes(breaks, cap, nodes_, weights_);
    wpsi_.resize(n_, static_cast<Eigen::Index>(nodes_.size()));
    std::vector<double> x(d_);
    for (std::size_t m = 0; m < nodes_.size(); ++m) {
      x = geo.center;
      x[0] += nodes_[m];
      const double jac = std::pow(nodes_[m], d_ - 1);
      for (int a = 0; a < n_; ++a) {
        wpsi_(a, static_cast<Eigen::Index>(m)) =
            weights_[m] * jac * model.value(a, x.data());
      }
    }
    for (double s : groups_.radii) counts_.push_back(count_below(s));
  }

  // Columns: output points (d = 1) or distinct radii (d >= 2).
  Eigen::MatrixXcd evaluate(double lambda) const {
    const std::size_t m = nodes_.size();
    const Eigen::Index cols = static_cast<Eigen::Index>(counts_.size());
    Eigen::MatrixXcd u(n_, cols);
    // Prefix sums of the two half-line integrands.
    Eigen::MatrixXcd pj = Eigen::MatrixXcd::Zero(n_, static_cast<Eigen::Index>(m) + 1);
    Eigen::MatrixXcd ph = pj;
    for (std::size_t k = 0; k < m; ++k) {
      const double t = nodes_[k];
      cplx jf, hf;
      if (d_ == 1) {
        jf = std::exp(cplx(0.0, -lambda * t));  // e^{-i lambda t}
        hf = std::conj(jf);
      } else if (d_ == 2) {
        const double z = lambda * t;
        jf = detail::jv(0, z);
        hf = cplx(jf.real(), detail::yv(0, z));
      } else {
        const double z = lambda * t;
        jf = z < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
        hf = z > 0.0 ? cplx(0.0, -1.0) * std::exp(cplx(0.0, z)) / z : cplx(0.0);
      }
      const Eigen::Index kk = static_cast<Eigen::Index>(k);
      pj.col(kk + 1) = pj.col(kk) + wpsi_.col(kk) * jf;
      ph.col(kk + 1) = ph.col(kk) + wpsi_.col(kk) * hf;
    }
    const Eigen::Index last = static_cast<Eigen::Index>(m);
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Eigen::Index cnt = counts_[static_cast<std::size_t>(c)];
      const Eigen::VectorXcd inner = pj.col(cnt);
      const Eigen::VectorXcd outer = ph.col(last) - ph.col(cnt);
      if (d_ == 1) {
        const double x = xs_[static_cast<std::size_t>(c)];
        const cplx e = std::exp(cplx(0.0, lambda * x));
        u.col(c) = (kI / (2.0 * lambda)) * (e * inner + std::conj(e) * outer);
      } else {
        const double s = groups_.radii[static_cast<std::size_t>(c)];
        const double z = lambda * s;
        if (d_ == 2) {
          const double j0 = detail::jv(0, z);
          if (s == 0.0) {
            u.col(c) = (kI * kPi / 2.0) * outer;
          } else {
            const cplx h0(j0, detail::yv(0, z));
            u.col(c) = (kI * kPi / 2.0) * (h0 * inner + j0 * outer);
          }
        } else {
          if (s == 0.0) {
            u.col(c) = (kI * lambda) * outer;
          } else {
            const double j0 = z < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z;
            const cplx h0 = cplx(0.0, -1.0) * std::exp(cplx(0.0, z)) / z;
            u.col(c) = (kI * lambda) * (h0 * inner + j0 * outer);
          }
        }
      }
    }
    return u;
  }

  // Column of u for output point i.
  Eigen::Index column(std::size_t i) const {
    return d_ == 1 ? static_cast<Eigen::Index>(i) : groups_.index[i];
  }
  std::size_t points() const {
    return d_ == 1 ? xs_.size() : groups_.index.size();
  }

 private:
  Eigen::Index count_below(double x) const {
    return static_cast<Eigen::Index>(
        std::lower_bound(nodes_.begin(), nodes_.end(), x) - nodes_.begin());
  }

  int d_;
  int n_;
  std::vector<double> xs_;
  RadiusGroups groups_;
  std::vector<double> nodes_, weights_;
  Eigen::MatrixXcd wpsi_;
  std::vector<Eigen::Index> counts_;
};

// v_b(lambda) = <(R_0^+ - R_0^-)(lambda^2) f, psi_b>.
class SourceSide {
 public:
  SourceSide(const PerturbationModel& model, const Geometry& geo,
             const SampledField& f, const SourceSpectrum& spectrum)
      : model_(model), d_(geo.d), spectrum_(spectrum) {
    cell_ = f.cell_volume();
    if (d_ == 1) {
      const auto& ax = f.axes()[0];
      for (int i = 0; i < ax.count; ++i) {
        if (f[static_cast<std::size_t>(i)] != cplx(0.0)) {
          xs_.push_back(ax.at(i));
          vals_.push_back(f[static_cast<std::size_t>(i)]);
        }
      }
    } else {
      groups_ = group_radii(f, geo.center);
    }
  }

  cplx transform(double xi) const {
    if (spectrum_) return spectrum_(xi);
    cplx acc = 0.0;
    for (std::size_t j = 0; j < xs_.size(); ++j) {
      acc += vals_[j] * std::exp(cplx(0.0, -xi * xs_[j]));
    }
    return acc * cell_;
  }

  Eigen::VectorXcd evaluate(double lambda) const {
    const int n = model_.size();
    Eigen::VectorXcd v(n);
    if (d_ == 1) {
      const cplx fp = transform(lambda), fm = transform(-lambda);
      for (int b = 0; b < n; ++b) {
        v[b] = (kI / (2.0 * lambda)) *
               (fp * model_.fourier(b, -lambda) + fm * model_.fourier(b, lambda));
      }
      return v;
    }
    cplx acc = 0.0;
    for (std::size_t k = 0; k < groups_.radii.size(); ++k) {
      const double s = groups_.radii[k];
      const double z = lambda * s;
      double kern;
      if (d_ == 2) {
        kern = detail::jv(0, z);
      } else {
        kern = s == 0.0 ? lambda / (2.0 * kPi) : std::sin(z) / (2.0 * kPi * s);
      }
      acc += groups_.sums[k] * kern;
    }
    acc *= cell_;
    for (int b = 0; b < n; ++b) {
      const double p = model_.radial_fourier(b, lambda);
      v[b] = d_ == 2 ? 0.5 * kI * p * acc : kI * p * acc;
    }
    return v;
  }

 private:
  const PerturbationModel& model_;
  int d_;
  const SourceSpectrum& spectrum_;
  double cell_ = 1.0;
  std::vector<double> xs_;
  std::vector<cplx> vals_;
  RadiusGroups groups_;
};

struct NodeData {
  Eigen::MatrixXcd g;  // band-weighted effective G
  double abs_det = 0.0;
};

NodeData node_data(const WaveOpConfig& cfg, EnergyBand band, double lambda) {
  const auto& model = cfg.model;
  const Eigen::MatrixXcd a =
      build_A(model.F(Sign::plus, lambda, cfg.quad), model.alpha());
  NodeData nd;
  nd.abs_det = std::abs(a.determinant());
  nd.g = model.alpha() * invert_G(a);
  const double chi = smooth_cutoff(cfg.chi, lambda, 0);
  if (band == EnergyBand::low) nd.g *= chi;
  if (band == EnergyBand::high) nd.g *= 1.0 - chi;
  return nd;
}

double extent(const SampledField& g, const std::vector<double>& c,
              bool nonzero_only) {
  double r = 0.0;
  std::vector<double> x(g.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (nonzero_only && g[i] == cplx(0.0)) continue;
    g.point(i, x.data());
    r = std::max(r, distance(x.data(), c, g.dim()));
  }
  return r;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

bool factorizable(const WaveOpConfig& cfg, const SampledField& f,
                  const SampledField* out) {
  if (cfg.model.dim() != 2 || !cfg.model.is_rank_one()) return false;
  if (out && !out->same_grid(f)) return false;
  const auto& ax = f.axes();
  return ax.size() == 2 && ax[0].count == ax[1].count &&
         is_power_of_two(ax[0].count) &&
         std::fabs(ax[0].spacing - ax[1].spacing) < 1e-12 * ax[0].spacing;
}

SampledField factorized_low(const WaveOpConfig& cfg, const SampledField& f) {
  const auto& model = cfg.model;
  const double q = model.mixing()(0, 0);
  std::map<double, cplx> memo;
  RadialSymbol symbol = [&](double k) -> cplx {
    if (!(k > 0.0) || k >= cfg.chi.hi) return 0.0;
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    const NodeData nd = node_data(cfg, EnergyBand::low, k);
    const cplx v = q * q * nd.g(0, 0);
    memo.emplace(k, v);
    return v;
  };
  const auto m = multiplier_apply(symbol, f, cfg.chi.hi);
  return tphi_apply(model.base().front(), m.output, cfg.quad);
}

WaveOpResult direct_scattered(const WaveOpConfig& cfg, const SampledField& f,
                              EnergyBand band, const SourceSpectrum& spectrum,
                              const SampledField& out) {
  const auto& model = cfg.model;
  const Geometry geo = geometry(model);
  const int d = geo.d;
  WaveOpResult res;
  res.output = SampledField::zeros(out.axes());
  const double reach = d == 1 ? 0.5 * (geo.hi - geo.lo) : geo.radius;
  const double xmax = extent(out, geo.center, false) +
                      extent(f, geo.center, !spectrum) + reach;
  const double width_cap = std::min(0.25, 8.0 / std::max(xmax, 1.0));

  const OutputSide outside(model, geo, out, width_cap);
  const SourceSide source(model, geo, f, spectrum);
  const std::size_t npts = out.size();

  auto integrand_peak = [&](double lambda, const NodeData& nd) {
    const Eigen::VectorXcd gv = nd.g * source.evaluate(lambda);
    const Eigen::MatrixXcd u = outside.evaluate(lambda);
    const Eigen::VectorXcd col = u.transpose() * gv;
    return lambda * col.cwiseAbs().maxCoeff() / kPi;
  };

  // Upper end of the lambda range.
  double lambda_max = cfg.lambda0;
  if (band != EnergyBand::low) {
    if (cfg.lambda_max > 0.0) {
      lambda_max = std::max(cfg.lambda_max, cfg.lambda0);
    } else {
      double hmin = f.axes()[0].spacing;
      for (const auto& ax : f.axes()) hmin = std::min(hmin, ax.spacing);
      const double cap = spectrum ? 200.0 : kPi / hmin;
      double fsup = 0.0;
      for (const auto& v : f.values()) fsup = std::max(fsup, std::abs(v));
      const double quiet = cfg.quad.abs_tol * std::max(1.0, fsup);
      const double step = width_cap;
      int run = 0;
      double lam = cfg.lambda0;
      res.lambda_truncated = true;
      for (; lam <= cap; lam += step) {
        const double peak = integrand_peak(lam, node_data(cfg, band, lam));
        run = peak < quiet ? run + 1 : 0;
        if (run >= 8) {
          res.lambda_truncated = false;
          break;
        }
      }
      lambda_max = std::min(lam, cap);
      if (res.lambda_truncated) {
        res.notes.push_back("integrand had not decayed at the source Nyquist "
                            "frequency; lambda range truncated");
      }
    }
  }
  res.lambda_max = lambda_max;

  // Lambda nodes: geometric grading toward 0, breaks at lambda0/2, lambda0.
  std::vector<double> breaks;
  const double floor = 1e-7 * cfg.lambda0;
  if (band != EnergyBand::high) {
    breaks.push_back(0.0);
    for (double e = cfg.lambda0; e > floor; e *= 0.5) breaks.push_back(e);
  } else {
    breaks.push_back(cfg.chi.lo);
    breaks.push_back(cfg.chi.hi);
  }
  if (band != EnergyBand::low) breaks.push_back(lambda_max);
  std::vector<double> lam, wts;
  composite_nodes(breaks, width_cap, lam, wts);
  res.lambda_nodes = static_cast<int>(lam.size());

  std::vector<NodeData> data(lam.size());
  parallel_for(lam.size(), cfg.workers,
               [&](std::size_t k) { data[k] = node_data(cfg, band, lam[k]); });
  res.min_abs_det = std::numeric_limits<double>::infinity();
  for (const auto& nd : data) res.min_abs_det = std::min(res.min_abs_det, nd.abs_det);

  // Fixed chunking keeps the summation order independent of the workers.
  const std::size_t chunks = std::min<std::size_t>(32, lam.size());
  std::vector<std::vector<cplx>> partial(chunks, std::vector<cplx>(npts));
  parallel_for(chunks, cfg.workers, [&](std::size_t c) {
    const std::size_t lo = c * lam.size() / chunks;
    const std::size_t hi = (c + 1) * lam.size() / chunks;
    auto& acc = partial[c];
    for (std::size_t k = lo; k < hi; ++k) {
      const Eigen::VectorXcd gv = data[k].g * source.evaluate(lam[k]);
      const Eigen::MatrixXcd u = outside.evaluate(lam[k]);
      const Eigen::VectorXcd col = u.transpose() * gv;
      const cplx w = wts[k] * lam[k] / (kPi * kI);
      for (std::size_t i = 0; i < npts; ++i) acc[i] += w * col[outside.column(i)];
    }
  });
  for (std::size_t c = 0; c < chunks; ++c) {
    for (std::size_t i = 0; i < npts; ++i) res.output[i] += partial[c][i];
  }
  return res;
}

double relative_difference(const SampledField& a, const SampledField& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

WaveOpResult scattered_part(const WaveOpConfig& cfg, const SampledField& f,
                            EnergyBand band, const SourceSpectrum& spectrum,
                            const SampledField* out_grid) {
  cfg.validate();
  if (f.dim() != cfg.model.dim()) {
    throw PreconditionError("field and model dimensions differ");
  }
  f.validate();
  const SampledField& out = out_grid ? *out_grid : f;
  if (cfg.model.alpha() == 0.0) {
    WaveOpResult res;
    res.output = SampledField::zeros(out.axes());
    res.notes.push_back("zero coupling: the scattered part vanishes");
    return res;
  }
  const bool factor = band != EnergyBand::high && !spectrum &&
                      cfg.d2_low_route == LowEnergyRoute::factorized &&
                      factorizable(cfg, f, out_grid);
  if (!factor) return direct_scattered(cfg, f, band, spectrum, out);

  SampledField low = factorized_low(cfg, f);
  WaveOpResult res;
  if (band == EnergyBand::full) {
    res = direct_scattered(cfg, f, EnergyBand::high, spectrum, out);
    for (std::size_t i = 0; i < low.size(); ++i) res.output[i] += low[i];
  } else {
    res.output = low;
    res.lambda_max = cfg.lambda0;
  }
  res.notes.push_back("low-energy piece via tphi_apply after the energy multiplier");
  if (cfg.direct_cross_check) {
    const auto direct = direct_scattered(cfg, f, EnergyBand::low, spectrum, out);
    res.cross_check_difference = relative_difference(low, direct.output);
  }
  return res;
}

WaveOpResult apply_w_minus(const WaveOpConfig& cfg, const SampledField& f) {
  WaveOpResult res = scattered_part(cfg, f, EnergyBand::full);
  for (std::size_t i = 0; i < f.size(); ++i) res.output[i] = f[i] - res.output[i];
  return res;
}

SplitResult low_high_split(const WaveOpConfig& cfg, const SampledField& f) {
  SplitResult s;
  WaveOpConfig direct = cfg;
  direct.d2_low_route = LowEnergyRoute::direct;
  s.low = scattered_part(direct, f, EnergyBand::low);
  s.high = scattered_part(direct, f, EnergyBand::high);
  s.full = scattered_part(direct, f, EnergyBand::full).output;
  double top = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    top = std::max(top, std::abs(s.full[i]));
    diff = std::max(diff, std::abs(s.low.output[i] + s.high.output[i] - s.full[i]));
  }
  s.consistency = top > 0.0 ? diff / top : diff;
  return s;
}

cplx hilbert_piece(double x, double y) {
  const double ax = std::fabs(x), ay = std::fabs(y);
  if (std::fabs(ax - ay) <= 1.0) return 0.0;
  return (1.0 / (ax + ay) - 1.0 / (ax - ay)) / (2.0 * kPi * kI);
}

cplx hilbert_piece_on_band(double x, double r_outer) {
  if (r_outer <= 2.0) return 0.0;
  const double a = std::fabs(x);
  // Antiderivative of 1/(a+y) + 1/(y-a) on pieces of (2, R) away from the
  // excluded band |y - a| <= 1.
  auto prim = [&](double y) { return std::log(a + y) + std::log(std::fabs(y - a)); };
  double total = 0.0;
  auto add = [&](double lo, double hi) {
    if (hi > lo) total += prim(hi) - prim(lo);
  };
  add(2.0, std::min(r_outer, a - 1.0));
  add(std::max(2.0, a + 1.0), r_outer);
  return total / (kPi * kI);
}

DichotomyReport dichotomy_d1(const WaveOpConfig& cfg,
                             const std::vector<double>& r_values,
                             bool with_low_energy) {
  cfg.validate();
  if (cfg.model.dim() != 1) throw PreconditionError("dichotomy_d1 needs d = 1");
  DichotomyReport rep;
  rep.hilbert_absent = cfg.model.k0() == 0;
  std::vector<double> logs, sups, lows, globals;
  for (double r : r_values) {
    if (!(r >= 2.0)) throw PreconditionError("dichotomy radii must be >= 2");
    DichotomyRow row;
    row.r_outer = r;
    if (!rep.hilbert_absent) {
      row.hilbert_at_zero = std::abs(hilbert_piece_on_band(0.0, r));
      for (int i = -200; i <= 200; ++i) {
        row.hilbert_sup = std::max(
            row.hilbert_sup, std::abs(hilbert_piece_on_band(0.995 * i / 200.0, r)));
      }
      // Norms of the Hilbert piece applied to f_R over [-(R+8), R+8].
      const double span = r + 8.0;
      const int n = static_cast<int>(std::ceil(2.0 * span / 0.02));
      SampledField hf = SampledField::line(-span, 2.0 * span / n, n + 1);
      SampledField fr = hf;
      for (std::size_t i = 0; i < hf.size(); ++i) {
        double x;
        hf.point(i, &x);
        hf[i] = hilbert_piece_on_band(x, r);
        fr[i] = std::fabs(x) > 2.0 && std::fabs(x) < r ? 1.0 : 0.0;
      }
      if (r > 2.0) {
        const auto nr = norm_reports(hf, fr, {1.0}, r);
        row.l1_ratio = nr.front().ratio;
        row.weak_l1_ratio = nr.front().weak_l1;
        rep.norms.push_back(nr.front());
      }
    }
    if (with_low_energy && r > 2.0) {
      SourceSpectrum spec = [r](double xi) -> cplx {
        if (std::fabs(xi) < 1e-12) return 2.0 * (r - 2.0);
        return 2.0 * (std::sin(xi * r) - std::sin(2.0 * xi)) / xi;
      };
      SampledField src = SampledField::line(-r, 2.0 * r / 64.0, 65);
      SampledField probe = SampledField::line(-0.99, 0.099, 21);
      const auto low = scattered_part(cfg, src, EnergyBand::low, spec, &probe);
      for (const auto& v : low.output.values()) {
        row.low_energy_sup = std::max(row.low_energy_sup, std::abs(v));
      }
      // The row at x = 0 may converge; the edges of the support are where a
      // 1/(|x|-|y|) tail shows up.
      const double reach = r + 4.0;
      const int m = static_cast<int>(std::ceil(2.0 * reach / 0.25));
      SampledField line = SampledField::line(-reach, 2.0 * reach / m, m + 1);
      const auto wide = scattered_part(cfg, src, EnergyBand::low, spec, &line);
      for (const auto& v : wide.output.values()) {
        row.low_energy_global_sup = std::max(row.low_energy_global_sup, std::abs(v));
      }
    }
    if (r > 2.0) {
      logs.push_back(std::log(r));
      sups.push_back(row.hilbert_sup);
      lows.push_back(row.low_energy_sup);
      globals.push_back(row.low_energy_global_sup);
      if (logs.size() >= 2) row.log_slope_running = fit_line(logs, sups).slope;
    }
    rep.rows.push_back(row);
  }
  if (logs.size() >= 2) {
    rep.hilbert_slope = fit_line(logs, sups).slope;
    if (with_low_energy) {
      rep.low_energy_slope = fit_line(logs, lows).slope;
      rep.low_energy_global_slope = fit_line(logs, globals).slope;
    }
  }
  return rep;
}

MeanZeroReport mean_zero_family(const WaveOpConfig& cfg,
                                const std::vector<double>& scales,
                                const std::vector<double>& shifts) {
  cfg.validate();
  if (cfg.model.dim() != 1) throw PreconditionError("mean_zero_family needs d = 1");
  MeanZeroReport rep;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double s : scales) {
    for (double x0 : shifts) {
      const double span = std::fabs(x0) + 12.0 * s + 30.0;
      const double h = std::min(0.25, s / 6.0);
      const int n = static_cast<int>(std::ceil(2.0 * span / h));
      SampledField f = SampledField::line(-span, 2.0 * span / n, n + 1);
      for (std::size_t i = 0; i < f.size(); ++i) {
        double x;
        f.point(i, &x);
        const double t = (x - x0) / s;
        f[i] = std::exp(-0.5 * t * t);
      }
      const auto w = apply_w_minus(cfg, f);
      const double ratio =
          lp_norms(w.output, {1.0}).lp[0] / lp_norms(f, {1.0}).lp[0];
      rep.scales.push_back(s);
      rep.shifts.push_back(x0);
      rep.l1_ratios.push_back(ratio);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  rep.max_over_min = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  return rep;
}

MultiplierResult multiplier_apply(const RadialSymbol& symbol,
                                  const SampledField& f, double support_radius) {
  f.validate();
  const int d = f.dim();
  const auto& ax = f.axes();
  const int n = ax[0].count;
  for (const auto& a : ax) {
    if (a.count != n || std::fabs(a.spacing - ax[0].spacing) > 1e-12 * a.spacing) {
      throw PreconditionError("multiplier_apply needs a cubic grid");
    }
  }
  if (!is_power_of_two(n)) {
    throw PreconditionError("multiplier_apply needs 2^k points per axis");
  }
  const double h = ax[0].spacing;
  const double dk = 2.0 * kPi / (n * h);
  const double nyquist = kPi / h;
  detail::Fft fft(d, n);
  MultiplierResult res;
  res.output = f;
  auto& v = res.output.values();
  fft.forward(v.data());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t rest = i;
    double k2 = 0.0;
    for (int a = 0; a < d; ++a) {
      const double xi = dk * fft.signed_index(static_cast<int>(rest % n));
      rest /= n;
      k2 += xi * xi;
    }
    v[i] *= symbol(std::sqrt(k2));
  }
  fft.inverse(v.data());
  if (support_radius > 0.0) {
    res.aliasing_warning = support_radius > nyquist;
  } else {
    res.aliasing_warning = std::abs(symbol(nyquist)) > 0.0;
  }
  return res;
}

KernelDecayReport multiplier_kernel_decay(double a, int d, const CutoffSpec& chi,
                                          const QuadConfig& cfg,
                                          std::vector<double> x_grid) {
  if (d != 1 && d != 2) throw PreconditionError("kernel decay probe needs d = 1 or 2");
  if (!(a > 1.0 / d)) {
    throw PreconditionError("symbol exponent a must exceed 1/d");
  }
  chi.validate();
  if (x_grid.empty()) {
    for (int i = 0; i <= 40; ++i) x_grid.push_back(std::pow(10.0, 2.0 + i * 0.05));
  }
  KernelDecayReport rep;
  rep.a = a;
  rep.d = d;
  auto symbol = [&](double k) {
    return std::pow(kE + std::fabs(std::log(k)), -a) * smooth_cutoff(chi, k, 0);
  };
  QuadConfig q = cfg;
  q.rel_tol = std::min(cfg.rel_tol, 1e-8);
  for (double x : x_grid) {
    // absolute target scaled to the expected kernel size at this x
    q.abs_tol = 1e-6 * std::pow(x, -d) * std::pow(std::log(x), -(a + 1.0 - 1.0 / d));
    std::vector<double> breaks;
    for (int j = 1; j <= 60; ++j) breaks.push_back(chi.hi * std::ldexp(1.0, -j));
    for (double k = kPi / x; k < chi.hi; k += kPi / x) breaks.push_back(k);
    breaks.push_back(chi.lo);
    std::sort(breaks.begin(), breaks.end());
    q.max_panels = std::max(cfg.max_panels, 4 * static_cast<int>(breaks.size()) + 64);
    double value;
    if (d == 1) {
      auto fn = [&](double k) { return symbol(k) * std::cos(k * x) / kPi; };
      value = require_converged(integrate_gk<double>(fn, 0.0, chi.hi, q, breaks),
                                "kernel decay").value;
    } else {
      auto fn = [&](double k) {
        return symbol(k) * detail::jv(0, k * x) * k / (2.0 * kPi);
      };
      value = require_converged(integrate_gk<double>(fn, 0.0, chi.hi, q, breaks),
                                "kernel decay").value;
    }
    rep.x.push_back(x);
    rep.kernel_abs.push_back(std::fabs(value));
    rep.normalized.push_back(std::fabs(value) * std::pow(x, d) *
                             std::pow(std::log(x), a + 1.0 - 1.0 / d));
  }
  std::vector<double> sorted = rep.normalized;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  rep.max_over_median = median > 0.0 ? sorted.back() / median
                                     : std::numeric_limits<double>::infinity();
  rep.bounded = rep.max_over_median < 10.0;
  return rep;
}

}  // namespace rkwave
