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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "rkwave/errors.hpp"
#include "rkwave/numerics.hpp"
#include "rkwave/oracle.hpp"
#include "rkwave/resolvent.hpp"
#include "rkwave/specfun.hpp"
#include "rkwave/spectral.hpp"
#include "rkwave/waveop.hpp"

namespace rkwave::tools {

namespace {

Sign sign_from(const std::string& s) {
  if (s == "plus" || s == "+") return Sign::plus;
  if (s == "minus" || s == "-") return Sign::minus;
  throw PreconditionError("sign must be 'plus' or 'minus'");
}

std::vector<double> spaced(double lo, double hi, int count, const std::string& how) {
  if (count < 2 || !(hi > lo)) throw PreconditionError("grid needs count >= 2 and hi > lo");
  std::vector<double> v(static_cast<std::size_t>(count));
  if (how == "log") {
    if (!(lo > 0.0)) throw PreconditionError("log spacing needs lo > 0");
    for (int i = 0; i < count; ++i) {
      v[static_cast<std::size_t>(i)] =
          lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    }
  } else if (how == "linear") {
    for (int i = 0; i < count; ++i) {
      v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    }
  } else {
    throw PreconditionError("spacing must be 'log' or 'linear'");
  }
  return v;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// FNV-1a over the model description.
std::string model_hash(const PerturbationModel& m) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : m.describe()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return hex64(h);
}

// Literal free-kernel formulas for the dimensions that have one.
std::optional<cplx> literal_kernel(int d, Sign s, double lambda, double r) {
  const double sg = sign_value(s);
  const cplx e = std::exp(cplx(0.0, sg * lambda * r));
  switch (d) {
    case 1: return sg * kI / (2.0 * lambda) * e;
    case 2: return 0.25 * kI * hankel(s, BesselOrder::integer(0), lambda * r);
    case 3: return e / (4.0 * kPi * r);
    case 5:
      return e * (1.0 - sg * kI * lambda * r) / (8.0 * kPi * kPi * r * r * r);
    default: return std::nullopt;
  }
}

void field_csv(const SampledField& f, const std::vector<std::pair<std::string, const SampledField*>>& cols,
               CsvTable& table) {
  std::vector<double> x(static_cast<std::size_t>(f.dim()));
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.point(i, x.data());
    std::vector<double> row(x);
    for (const auto& c : cols) {
      row.push_back((*c.second)[i].real());
      row.push_back((*c.second)[i].imag());
    }
    table.add_row(row);
  }
}

std::vector<std::string> field_columns(int d, const std::vector<std::string>& names) {
  std::vector<std::string> cols;
  static const char* axes[] = {"x", "y", "z"};
  for (int a = 0; a < d; ++a) cols.push_back(a < 3 ? axes[a] : "x" + std::to_string(a));
  for (const auto& n : names) {
    cols.push_back(n.empty() ? "re" : n + "_re");
    cols.push_back(n.empty() ? "im" : n + "_im");
  }
  return cols;
}

void add_notes(ArtifactSink& sink, const std::vector<std::string>& notes) {
  for (const auto& n : notes) sink.manifest().add_note(n);
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Check make_check(int criterion, std::string name, double measured,
                 std::string requirement, bool pass) {
  return Check{criterion, std::move(name), measured, std::move(requirement), pass};
}

}  // namespace

void run_resolvent(RunConfig& cfg, ArtifactSink& sink, const RunOptions&) {
  const int d = cfg.integer("resolvent", "d", 3);
  require_dimension(d);
  const KernelPart part = kernel_part_from_string(cfg.text("resolvent", "part", "full"));
  const Sign sign = sign_from(cfg.text("resolvent", "sign", "plus"));
  const double lambda = cfg.number("resolvent", "lambda", 1.0);
  const double r_min = cfg.number("resolvent", "r_min", 0.01);
  const double r_max = cfg.number("resolvent", "r_max", 100.0);
  const int count = cfg.integer("resolvent", "count", 200);
  const auto r = spaced(r_min, r_max, count, cfg.text("resolvent", "spacing", "log"));
  const auto vals = kernel_part_values(part, d, sign, lambda, r);
  CsvTable t({"r", "re", "im"});
  for (std::size_t i = 0; i < r.size(); ++i) t.add_row({r[i], vals[i].real(), vals[i].imag()});
  sink.csv("kernel.csv", "kernel/v1", t);

  if (part == KernelPart::full) {
    const auto other = kernel_part_values(KernelPart::full, d, flip(sign), lambda, r);
    double conj_err = 0.0, lit_err = 0.0;
    bool have_literal = true;
    for (std::size_t i = 0; i < r.size(); ++i) {
      conj_err = std::max(conj_err, std::abs(vals[i] - std::conj(other[i])) /
                                        std::max(std::abs(vals[i]), 1e-300));
      const auto lit = literal_kernel(d, sign, lambda, r[i]);
      if (!lit) {
        have_literal = false;
        continue;
      }
      lit_err = std::max(lit_err, std::abs(vals[i] - *lit) / std::abs(*lit));
    }
    sink.manifest().add_check(make_check(2, "conjugation symmetry R0^+ = conj R0^-",
                                         conj_err, "< 1e-14", conj_err < 1e-14));
    if (have_literal) {
      sink.manifest().add_check(make_check(2, "free kernel vs literal closed form (d=" +
                                                  std::to_string(d) + ")",
                                           lit_err, "< 1e-12", lit_err < 1e-12));
    }
  }
}

void run_spectral_scan(RunConfig& cfg, ArtifactSink& sink, const RunOptions& opt) {
  const PerturbationModel model = cfg.model();
  const QuadConfig q = cfg.quadrature();
  const double lo = cfg.number("scan", "lambda_min", 0.01);
  const double hi = cfg.number("scan", "lambda_max", 20.0);
  const int count = cfg.integer("scan", "count", 64);
  const auto lambdas = spaced(lo, hi, count, cfg.text("scan", "spacing", "log"));
  const double c0 = cfg.number("scan", "c0", 0.05);
  const SpectralCurve curve = spectral_condition_scan(model, lambdas, c0, q, opt.workers);
  CsvTable t({"lambda", "abs_det", "F11_plus_re", "F11_plus_im", "G11_plus_re",
              "G11_plus_im", "jump", "failed"});
  for (std::size_t i = 0; i < curve.lambdas.size(); ++i) {
    const bool failed = !curve.failures[i].empty();
    const cplx f = failed ? cplx(NAN, NAN) : curve.F_plus[i](0, 0);
    const cplx g = failed ? cplx(NAN, NAN) : curve.G_plus[i](0, 0);
    t.add_row({curve.lambdas[i], curve.abs_det[i], f.real(), f.imag(), g.real(),
               g.imag(), curve.jump_flags[i] ? 1.0 : 0.0, failed ? 1.0 : 0.0});
    if (failed) {
      sink.manifest().add_note("lambda = " + format_number(curve.lambdas[i]) + ": " +
                               curve.failures[i]);
    }
  }
  sink.csv("scan.csv", "spectral-scan/v1", t);
  Json s;
  s["model_hash"] = model_hash(model);
  s["c0_target"] = number(c0);
  s["det_margin"] = number(curve.det_margin);
  s["pass"] = curve.pass;
  if (curve.has_high_energy_check) {
    s["high_energy_f_slope"] = number(curve.high_energy_f_slope);
    s["high_energy_g_slope"] = number(curve.high_energy_g_slope);
    s["high_energy_pass"] = curve.high_energy_pass;
  }
  sink.json("scan.json", "spectral-scan-summary/v1", s);
  if (!curve.pass) {
    sink.manifest().add_note("spectral condition min |det A| below c0 target");
    throw ConditionViolation("spectral condition failed on the scan grid",
                             curve.det_margin);
  }
}

void run_expansion_fit(RunConfig& cfg, ArtifactSink& sink, const RunOptions&) {
  const PerturbationModel model = cfg.model();
  const QuadConfig q = cfg.quadrature();
  const Sign sign = sign_from(cfg.text("expansion", "sign", "plus"));
  const double lambda0 = cfg.number("expansion", "lambda0", 0.0);
  const LowEnergyFit fit = low_energy_fit(model, sign, {}, q, lambda0);
  CsvTable t({"lambda", "remainder_abs"});
  for (std::size_t i = 0; i < fit.lambdas.size(); ++i) {
    t.add_row({fit.lambdas[i], fit.remainder_abs[i]});
  }
  sink.csv("expansion.csv", "expansion-remainder/v1", t);

  const int d = model.dim();
  const double m = model.masses()[0];
  Json j;
  j["model_hash"] = model_hash(model);
  j["law"] = to_string(fit.law);
  j["leading_re"] = number(fit.leading.real());
  j["leading_im"] = number(fit.leading.imag());
  j["leading_error"] = number(fit.leading_error);
  j["secondary_re"] = number(fit.secondary.real());
  j["secondary_im"] = number(fit.secondary.imag());
  j["remainder_slope"] = number(fit.remainder_slope);
  j["fit_r2"] = number(fit.fit_r2);
  j["accepted"] = fit.accepted;
  j["lambda0"] = number(fit.lambda0_used);

  const double slope_floor = d == 3 ? 0.9 : 0.45;
  sink.manifest().add_check(make_check(
      4, "remainder slope (d=" + std::to_string(d) + ")", fit.remainder_slope,
      ">= " + short_number(slope_floor) + " with r2 > 0.98",
      fit.remainder_slope >= slope_floor && fit.fit_r2 > 0.98));
  if (d == 1 || d == 2) {
    // Leading coefficients in terms of the mass of the first profile.
    const cplx expect = d == 1 ? sign_value(sign) * 0.5 * kI * m * m
                               : cplx(m * m / (2.0 * kPi));
    const double rel = std::abs(fit.leading - expect) / std::abs(expect);
    j["expected_leading_re"] = number(expect.real());
    j["expected_leading_im"] = number(expect.imag());
    if (std::abs(expect) > 1e-12) {
      sink.manifest().add_check(make_check(
          4, d == 1 ? "leading of lambda F vs (i/2)(int phi)^2"
                    : "log coefficient vs (int phi)^2 / 2pi",
          rel, "< 2e-2", rel < 2e-2));
    }
  }
  if (!model.is_rank_one() && (d == 1 || d == 2)) {
    const G11Leading g = g11_leading(model, sign, q);
    j["g11_leading_re"] = number(g.value.real());
    j["g11_leading_im"] = number(g.value.imag());
    j["g11_error"] = number(g.error);
    const cplx expect = d == 1 ? cplx(0.0, -2.0 * sign_value(sign) / (m * m))
                               : cplx(-2.0 * kPi / (m * m));
    const double rel = std::abs(g.value - expect) / std::abs(expect);
    const double tol = d == 1 ? 2e-2 : 5e-2;
    sink.manifest().add_check(make_check(5, "g11 leading coefficient", rel,
                                         "< " + short_number(tol), rel < tol));
    const double tail = g.off_diagonal.empty() ? 0.0 : g.off_diagonal.back();
    const double head = g.off_diagonal.empty() ? 0.0 : g.off_diagonal.front();
    j["g1j_first"] = number(head);
    j["g1j_last"] = number(tail);
    sink.manifest().add_check(make_check(5, "g1j -> 0 for j != 1", tail,
                                         "decreasing toward 0",
                                         tail < head || tail < 1e-12));
  }
  sink.json("expansion.json", "expansion-fit/v1", j);
}

void run_wave_apply(RunConfig& cfg, ArtifactSink& sink, const RunOptions& opt) {
  const PerturbationModel model = cfg.model();
  WaveOpConfig w = cfg.wave(model);
  w.workers = opt.workers;
  const std::string band_name = cfg.text("wave", "band", "full");
  SampledField f = cfg.source(model.dim());
  WaveOpResult res;
  if (band_name == "full") {
    res = apply_w_minus(w, f);
  } else if (band_name == "low" || band_name == "high") {
    res = scattered_part(w, f, band_name == "low" ? EnergyBand::low : EnergyBand::high);
  } else {
    throw PreconditionError("wave band must be full, low or high");
  }
  add_notes(sink, res.notes);
  if (band_name != "full") {
    sink.manifest().add_note("output is the scattered part (I - W_-) f on the " +
                             band_name + "-energy band");
  }
  CsvTable t(field_columns(f.dim(), {""}));
  field_csv(res.output, {{"", &res.output}}, t);
  sink.csv("wave.csv", "sampled-field/v1", t);

  const auto reports = norm_reports(res.output, f, {1.0, 2.0, kInfP}, 0.0);
  Json nr = Json::array();
  for (const auto& r : reports) {
    Json e;
    e["p"] = std::isinf(r.p) ? Json("inf") : Json(r.p);
    e["ratio"] = number(r.ratio);
    e["weak_l1"] = number(r.weak_l1);
    nr.push_back(e);
  }
  Json doc;
  doc["model_hash"] = model_hash(model);
  doc["band"] = band_name;
  doc["lambda_max"] = number(res.lambda_max);
  doc["lambda_nodes"] = res.lambda_nodes;
  doc["min_abs_det"] = number(res.min_abs_det);
  doc["lambda_truncated"] = res.lambda_truncated;
  if (res.cross_check_difference >= 0.0) {
    doc["cross_check_difference"] = number(res.cross_check_difference);
  }
  doc["norms"] = nr;
  sink.json("norms.json", "norm-report/v1", doc);
  if (band_name == "full") {
    double ratio2 = 0.0;
    for (const auto& r : reports) {
      if (r.p == 2.0) ratio2 = r.ratio;
    }
    sink.manifest().add_check(make_check(8, "L2 isometry |W f|/|f| - 1",
                                         std::fabs(ratio2 - 1.0), "< 1e-2",
                                         std::fabs(ratio2 - 1.0) < 1e-2));
  }
}

void run_dichotomy(RunConfig& cfg, ArtifactSink& sink, const RunOptions& opt) {
  const PerturbationModel model = cfg.model();
  if (model.dim() != 1) throw PreconditionError("dichotomy runs in d = 1");
  WaveOpConfig w = cfg.wave(model);
  w.workers = opt.workers;
  const auto radii = cfg.list("dichotomy", "radii", {20.0, 200.0, 2000.0});
  const bool low = cfg.flag("dichotomy", "low_energy", true);
  const DichotomyReport rep = dichotomy_d1(w, radii, low);
  CsvTable t({"R", "sup_abs", "l1_ratio", "weak_l1_ratio", "log_slope_running",
              "hilbert_at_zero", "low_energy_sup", "low_energy_global_sup"});
  for (const auto& r : rep.rows) {
    t.add_row({r.r_outer, r.hilbert_sup, r.l1_ratio, r.weak_l1_ratio,
               r.log_slope_running, r.hilbert_at_zero, r.low_energy_sup,
               r.low_energy_global_sup});
  }
  sink.csv("dichotomy.csv", "dichotomy/v1", t);
  Json j;
  j["model_hash"] = model_hash(model);
  j["hilbert_absent"] = rep.hilbert_absent;
  j["hilbert_slope"] = number(rep.hilbert_slope);
  j["low_energy_slope"] = number(rep.low_energy_slope);
  j["low_energy_global_slope"] = number(rep.low_energy_global_slope);

  if (rep.hilbert_absent) {
    sink.manifest().add_note(
        "all profile masses vanish: the Hilbert piece is identically absent");
    const auto scales = cfg.list("dichotomy", "scales", {0.5, 5.0, 50.0});
    const auto shifts = cfg.list("dichotomy", "shifts", {0.0, 20.0});
    const MeanZeroReport mz = mean_zero_family(w, scales, shifts);
    CsvTable m({"scale", "shift", "l1_ratio"});
    for (std::size_t i = 0; i < mz.l1_ratios.size(); ++i) {
      m.add_row({mz.scales[i], mz.shifts[i], mz.l1_ratios[i]});
    }
    sink.csv("mean_zero.csv", "mean-zero-family/v1", m);
    j["mean_zero_max_over_min"] = number(mz.max_over_min);
    sink.manifest().add_check(make_check(9, "mean-zero L1 ratio max/min",
                                         mz.max_over_min, "< 3",
                                         mz.max_over_min < 3.0));
  } else {
    double worst = 0.0;
    for (const auto& r : rep.rows) {
      if (r.r_outer <= 2.0) continue;
      const double expect = 2.0 / kPi * std::log(r.r_outer / 2.0);
      worst = std::max(worst, std::fabs(r.hilbert_at_zero - expect) / expect);
    }
    sink.manifest().add_check(make_check(9, "hilbert piece at 0 vs (2/pi) ln(R/2)",
                                         worst, "< 1e-2", worst < 1e-2));
    sink.manifest().add_check(make_check(9, "hilbert piece sup log-slope",
                                         rep.hilbert_slope, "> 0.3",
                                         rep.hilbert_slope > 0.3));
    if (low) {
      sink.manifest().add_check(make_check(
          9, "low-energy sup log-slope", rep.low_energy_global_slope, "> 0",
          rep.low_energy_global_slope > 0.0));
    }
  }
  sink.json("dichotomy.json", "dichotomy-summary/v1", j);
}

void run_oracle_compare(RunConfig& cfg, ArtifactSink& sink, const RunOptions& opt) {
  const PerturbationModel model = cfg.model();
  const int d = model.dim();
  WaveOpConfig w = cfg.wave(model);
  w.workers = opt.workers;
  const GridSpec grid = cfg.oracle_grid(d);
  SampledField f = grid.field();
  cfg.fill_source(f);
  TimeLimitOptions to;
  to.averaging = averaging_from_string(cfg.text("oracle", "averaging", "window"));
  const double T = cfg.number("oracle", "T", 0.0);
  const int samples = cfg.integer("oracle", "ak_samples", 10);
  const double tol = cfg.number("oracle", "tolerance", model.is_rank_one() ? 5e-2 : 8e-2);

  const CompareReport rep = compare_stationary_vs_time(w, grid, f, T, to);
  CsvTable t(field_columns(d, {"stationary", "time"}));
  field_csv(rep.stationary, {{"stationary", &rep.stationary}, {"time", &rep.time_limit}}, t);
  sink.csv("compare.csv", "oracle-fields/v1", t);

  // AK identity at seeded sample points off the spectrum.
  const DiscreteModel dm = DiscreteModel::discretize(model, grid);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> energy(0.05, 20.0), logeta(-3.0, 0.0);
  double ak_max = 0.0;
  CsvTable ak({"re_z", "im_z", "residual", "abs_det"});
  for (int s = 0; s < samples; ++s) {
    const double e = energy(rng);
    const double eta = std::pow(10.0, logeta(rng)) * (s % 2 == 0 ? 1.0 : -1.0);
    const AkReport a = ak_identity_check(dm, cplx(e, eta));
    ak_max = std::max(ak_max, a.residual);
    ak.add_row({e, eta, a.residual, a.abs_det});
  }
  sink.csv("ak_samples.csv", "ak-identity/v1", ak);

  Json j;
  j["model_hash"] = model_hash(model);
  Json g;
  g["d"] = grid.d;
  g["half_length"] = number(grid.half_length);
  g["n"] = grid.n;
  j["grid"] = g;
  j["T"] = number(rep.T);
  j["rel_l2_error"] = number(rep.rel_l2_error);
  j["rel_to_scattered"] = number(rep.rel_to_scattered);
  j["t_doubling_difference"] = number(rep.t_doubling_difference);
  Json iso;
  iso["time"] = number(rep.isometry_drift_time);
  iso["stationary"] = number(rep.isometry_drift_stationary);
  j["isometry_drift"] = iso;
  j["ak_residual"] = number(std::max(ak_max, rep.ak_residual));
  j["lambda_max"] = number(rep.lambda_max);
  sink.json("oracle.json", "oracle-compare/v1", j);

  auto& man = sink.manifest();
  man.add_check(make_check(7, "stationary vs time-limit relative L2", rep.rel_l2_error,
                           "< " + short_number(tol), rep.rel_l2_error < tol));
  man.add_check(make_check(7, "T-doubling stability", rep.t_doubling_difference,
                           "< 2e-2", rep.t_doubling_difference < 2e-2));
  man.add_check(make_check(6, "Aronszajn-Krein residual (max over samples)",
                           std::max(ak_max, rep.ak_residual), "< 1e-10",
                           std::max(ak_max, rep.ak_residual) < 1e-10));
  const double drift = std::max(rep.isometry_drift_time, rep.isometry_drift_stationary);
  man.add_check(make_check(8, "isometry drift (both pipelines)", drift, "< 1e-2",
                           drift < 1e-2));
}

}  // namespace rkwave::tools
