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

#ifndef RKWAVE_WAVEOP_HPP_
#define RKWAVE_WAVEOP_HPP_

#include <functional>
#include <string>
#include <vector>

#include "rkwave/fields.hpp"
#include "rkwave/model.hpp"
#include "rkwave/resolvent.hpp"

namespace rkwave {

enum class LowEnergyRoute { direct, factorized };

struct WaveOpConfig {
  PerturbationModel model;
  double lambda0 = 0.5;
  CutoffSpec chi{0.25, 0.5, 8};
  QuadConfig quad;
  // Upper end of the lambda integral; <= 0 picks it from the envelope.
  double lambda_max = 0.0;
  int workers = 1;
  // d = 2 rank-one low-energy piece: through tphi_apply after the energy
  // multiplier, or by the same assembly as the high-energy piece.
  LowEnergyRoute d2_low_route = LowEnergyRoute::factorized;
  bool direct_cross_check = false;

  static WaveOpConfig make(PerturbationModel model, double lambda0);
  void validate() const;
};

// Optional closed-form source transform f_hat(xi) (d = 1) used in place of
// the Riemann sum over the samples.
using SourceSpectrum = std::function<cplx(double)>;

enum class EnergyBand { full, low, high };

struct WaveOpResult {
  SampledField output;
  double lambda_max = 0.0;
  int lambda_nodes = 0;
  double min_abs_det = 0.0;
  // Set when the envelope had not decayed by the grid's Nyquist frequency.
  bool lambda_truncated = false;
  // Relative difference to the direct route when the cross-check ran.
  double cross_check_difference = -1.0;
  std::vector<std::string> notes;
};

// W_- f on the grid of f.
WaveOpResult apply_w_minus(const WaveOpConfig& cfg, const SampledField& f);

// The scattered part (I - W_-) f restricted to an energy band, evaluated on
// the grid of `out_grid` (the grid of f when empty).
WaveOpResult scattered_part(const WaveOpConfig& cfg, const SampledField& f,
                            EnergyBand band, const SourceSpectrum& spectrum = {},
                            const SampledField* out_grid = nullptr);

struct SplitResult {
  WaveOpResult low;
  WaveOpResult high;
  SampledField full;
  // max |low + high - full| / max |full|.
  double consistency = 0.0;
};

SplitResult low_high_split(const WaveOpConfig& cfg, const SampledField& f);

cplx hilbert_piece(double x, double y);

// Closed-form action of the truncated Hilbert piece on 1_{2<|y|<R} at x,
// |x| < 1.
cplx hilbert_piece_on_band(double x, double r_outer);

struct DichotomyRow {
  double r_outer = 0.0;
  double hilbert_at_zero = 0.0;
  double hilbert_sup = 0.0;
  // sup over |x| < 1 of |W^l f_R| (0 when not requested).
  double low_energy_sup = 0.0;
  // sup over a 0.25-spaced grid on |x| <= R + 4.
  double low_energy_global_sup = 0.0;
  double l1_ratio = 0.0;
  double weak_l1_ratio = 0.0;
  double log_slope_running = 0.0;
};

struct DichotomyReport {
  std::vector<DichotomyRow> rows;
  double hilbert_slope = 0.0;
  double low_energy_slope = 0.0;
  double low_energy_global_slope = 0.0;
  bool hilbert_absent = false;
  std::vector<NormReport> norms;
};

DichotomyReport dichotomy_d1(const WaveOpConfig& cfg,
                             const std::vector<double>& r_values,
                             bool with_low_energy = true);

struct MeanZeroReport {
  std::vector<double> scales;
  std::vector<double> shifts;
  std::vector<double> l1_ratios;
  double max_over_min = 0.0;
};

// ||W_- f||_1 / ||f||_1 over Gaussian sources of the given widths and
// shifts (d = 1).
MeanZeroReport mean_zero_family(const WaveOpConfig& cfg,
                                const std::vector<double>& scales,
                                const std::vector<double>& shifts);

using RadialSymbol = std::function<cplx(double)>;

struct MultiplierResult {
  SampledField output;
  bool aliasing_warning = false;
};

// Fourier multiplier on a periodic grid of n^d points (n a power of two).
MultiplierResult multiplier_apply(const RadialSymbol& symbol,
                                  const SampledField& f,
                                  double support_radius = 0.0);

struct KernelDecayReport {
  double a = 0.0;
  int d = 2;
  std::vector<double> x;
  std::vector<double> kernel_abs;
  std::vector<double> normalized;
  double max_over_median = 0.0;
  bool bounded = false;
};

KernelDecayReport multiplier_kernel_decay(double a, int d, const CutoffSpec& chi,
                                          const QuadConfig& cfg,
                                          std::vector<double> x_grid = {});

}  // namespace rkwave

#endif  // RKWAVE_WAVEOP_HPP_
