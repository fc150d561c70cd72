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

#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <cmath>
#include <sstream>

#include "rkwave/errors.hpp"
#include "rkwave/spectral.hpp"

namespace rkwave::tools {

namespace pt = boost::property_tree;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    const std::string tok = item.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw PreconditionError("not a number: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

RunConfig RunConfig::load(const std::string& path) {
  RunConfig c;
  c.path_ = path;
  if (!path.empty()) {
    try {
      pt::read_ini(path, c.tree_);
    } catch (const pt::ini_parser_error& e) {
      throw PreconditionError(std::string("config: ") + e.what());
    }
  }
  return c;
}

const pt::ptree* RunConfig::section(const std::string& name) const {
  // Section names may contain '.', so no path lookup.
  const auto it = tree_.find(name);
  return it == tree_.not_found() ? nullptr : &it->second;
}

bool RunConfig::has_section(const std::string& name) const {
  return section(name) != nullptr;
}

std::optional<std::string> RunConfig::raw(const std::string& sec,
                                          const std::string& key) const {
  const pt::ptree* s = section(sec);
  if (!s) return std::nullopt;
  const auto it = s->find(key);
  if (it == s->not_found()) return std::nullopt;
  return it->second.data();
}

void RunConfig::set(const std::string& sec, const std::string& key,
                    const Json& v) {
  resolved_[sec][key] = v;
}

double RunConfig::number(const std::string& sec, const std::string& key,
                         double fallback) {
  double v = fallback;
  if (auto r = raw(sec, key)) {
    const auto vals = parse_list(*r);
    if (vals.size() != 1) {
      throw PreconditionError("config [" + sec + "] " + key + ": expected one number");
    }
    v = vals[0];
  }
  set(sec, key, ::rkwave::tools::number(v));
  return v;
}

int RunConfig::integer(const std::string& sec, const std::string& key,
                       int fallback) {
  int v = fallback;
  if (auto r = raw(sec, key)) {
    const double d = parse_list(*r).at(0);
    if (d != std::floor(d) || std::fabs(d) > 1e9) {
      throw PreconditionError("config [" + sec + "] " + key + ": expected an integer");
    }
    v = static_cast<int>(d);
  }
  set(sec, key, v);
  return v;
}

bool RunConfig::flag(const std::string& sec, const std::string& key,
                     bool fallback) {
  bool v = fallback;
  if (auto r = raw(sec, key)) {
    if (*r == "true" || *r == "1" || *r == "yes" || *r == "on") {
      v = true;
    } else if (*r == "false" || *r == "0" || *r == "no" || *r == "off") {
      v = false;
    } else {
      throw PreconditionError("config [" + sec + "] " + key + ": expected true/false");
    }
  }
  set(sec, key, v);
  return v;
}

std::string RunConfig::text(const std::string& sec, const std::string& key,
                            const std::string& fallback) {
  std::string v = raw(sec, key).value_or(fallback);
  set(sec, key, v);
  return v;
}

std::vector<double> RunConfig::list(const std::string& sec,
                                    const std::string& key,
                                    const std::vector<double>& fallback) {
  std::vector<double> v = fallback;
  if (auto r = raw(sec, key)) v = parse_list(*r);
  Json arr = Json::array();
  for (double x : v) arr.push_back(::rkwave::tools::number(x));
  set(sec, key, arr);
  return v;
}

PotentialProfile RunConfig::profile(const std::string& name, int d) {
  const std::string sec = "profile." + name;
  ProfileSpec spec;
  spec.d = d;
  spec.kind = profile_kind_from_string(text(sec, "kind", "gaussian"));
  if (spec.kind == ProfileKind::box) {
    spec.params = {number(sec, "half_width", 1.0)};
  } else if (spec.kind != ProfileKind::sampled) {
    spec.params = {number(sec, "width", 1.0)};
  }
  spec.center = list(sec, "center", std::vector<double>(static_cast<std::size_t>(d), 0.0));
  if (static_cast<int>(spec.center.size()) != d) {
    throw PreconditionError("profile " + name + ": center needs d coordinates");
  }
  if (spec.kind == ProfileKind::sampled) {
    spec.source = text(sec, "file", "");
    if (spec.source.empty()) {
      throw PreconditionError("profile " + name + ": sampled kind needs file");
    }
  }
  if (raw(sec, "decay")) spec.decay_exponent = number(sec, "decay", 0.0);
  if (raw(sec, "smoothness")) spec.smoothness_order = integer(sec, "smoothness", 0);
  return PotentialProfile::from_spec(spec);
}

PerturbationModel RunConfig::model() {
  const int d = integer("model", "d", 1);
  require_pipeline_dimension(d);
  const std::string rank = text("model", "rank", "one");
  std::vector<std::string> names;
  {
    std::istringstream in(text("model", "profiles", "phi"));
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto b = item.find_first_not_of(" \t");
      if (b == std::string::npos) continue;
      names.push_back(item.substr(b, item.find_last_not_of(" \t") - b + 1));
    }
  }
  if (names.empty()) throw PreconditionError("model: no profiles listed");
  std::vector<PotentialProfile> profiles;
  for (const auto& n : names) profiles.push_back(profile(n, d));
  PerturbationModel m = [&] {
    if (rank == "one") {
      if (profiles.size() != 1) {
        throw PreconditionError("rank one model takes exactly one profile");
      }
      return PerturbationModel::rank_one(number("model", "alpha", 1.0),
                                         profiles.front());
    }
    if (rank == "finite") return PerturbationModel::finite_rank(profiles);
    throw PreconditionError("model rank must be 'one' or 'finite'");
  }();
  if (rank == "finite" && flag("model", "mass_rotation", false)) {
    m = orthonormalize_psi(m);
  }
  m.validate();
  return m;
}

QuadConfig RunConfig::quadrature() {
  QuadConfig q;
  q.abs_tol = number("quadrature", "abs_tol", q.abs_tol);
  q.rel_tol = number("quadrature", "rel_tol", q.rel_tol);
  q.max_panels = integer("quadrature", "max_panels", q.max_panels);
  q.validate();
  return q;
}

WaveOpConfig RunConfig::wave(const PerturbationModel& model) {
  WaveOpConfig w = WaveOpConfig::make(model, number("wave", "lambda0", 0.5));
  w.quad = quadrature();
  w.lambda_max = number("wave", "lambda_max", 0.0);
  const std::string route = text("wave", "route", "factorized");
  if (route == "factorized") {
    w.d2_low_route = LowEnergyRoute::factorized;
  } else if (route == "direct") {
    w.d2_low_route = LowEnergyRoute::direct;
  } else {
    throw PreconditionError("wave route must be 'factorized' or 'direct'");
  }
  w.direct_cross_check = flag("wave", "cross_check", false);
  return w;
}

void RunConfig::fill_source(SampledField& f) {
  const int d = f.dim();
  const std::string kind = text("source", "kind", "packet");
  const auto center = list("source", "center", std::vector<double>(static_cast<std::size_t>(d), 0.0));
  if (static_cast<int>(center.size()) != d) {
    throw PreconditionError("source center needs d coordinates");
  }
  std::vector<double> x(static_cast<std::size_t>(d));
  if (kind == "packet" || kind == "gaussian") {
    const double w = number("source", "width", 1.5);
    std::vector<double> k(static_cast<std::size_t>(d), 0.0);
    if (kind == "packet") {
      k = list("source", "momentum", [&] {
        std::vector<double> v(static_cast<std::size_t>(d), 0.0);
        v[0] = 4.0;
        return v;
      }());
      if (static_cast<int>(k.size()) != d) {
        throw PreconditionError("source momentum needs d coordinates");
      }
    }
    if (!(w > 0.0)) throw PreconditionError("source width must be positive");
    for (std::size_t i = 0; i < f.size(); ++i) {
      f.point(i, x.data());
      double r2 = 0.0, phase = 0.0;
      for (int a = 0; a < d; ++a) {
        const double t = x[static_cast<std::size_t>(a)] - center[static_cast<std::size_t>(a)];
        r2 += t * t;
        phase += k[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(a)];
      }
      f[i] = std::exp(-0.5 * r2 / (w * w)) * std::exp(cplx(0.0, phase));
    }
    return;
  }
  if (kind == "indicator") {
    const double inner = number("source", "inner", 0.0);
    const double outer = number("source", "outer", 1.0);
    if (!(outer > inner) || inner < 0.0) {
      throw PreconditionError("indicator source needs 0 <= inner < outer");
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      f.point(i, x.data());
      double r2 = 0.0;
      for (int a = 0; a < d; ++a) {
        const double t = x[static_cast<std::size_t>(a)] - center[static_cast<std::size_t>(a)];
        r2 += t * t;
      }
      const double r = std::sqrt(r2);
      f[i] = r >= inner && r <= outer ? 1.0 : 0.0;
    }
    return;
  }
  throw PreconditionError("source kind must be packet, gaussian or indicator");
}

SampledField RunConfig::source(int d) {
  SampledField f = [&] {
    if (d == 1) {
      const double origin = number("source", "origin", -20.0);
      const double h = number("source", "spacing", 0.1);
      return SampledField::line(origin, h, integer("source", "count", 401));
    }
    if (d == 2) {
      const double half = number("source", "half_length", 16.0);
      const int n = integer("source", "n", 128);
      if (!(half > 0.0) || n < 2) throw PreconditionError("bad d = 2 source grid");
      return SampledField::square(-half, 2.0 * half / n, n);
    }
    throw PreconditionError("wave-apply supports d = 1 and d = 2 grids");
  }();
  fill_source(f);
  return f;
}

GridSpec RunConfig::oracle_grid(int d) {
  GridSpec g;
  g.d = d;
  g.half_length = number("oracle", "half_length", d == 1 ? 40.0 : 32.0);
  g.n = integer("oracle", "n", d == 1 ? 2048 : 256);
  g.validate();
  return g;
}

}  // namespace rkwave::tools
