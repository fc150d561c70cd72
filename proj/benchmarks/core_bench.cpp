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

#include <benchmark/benchmark.h>

#include <cmath>

#include "rkwave/oracle.hpp"
#include "rkwave/resolvent.hpp"
#include "rkwave/specfun.hpp"
#include "rkwave/spectral.hpp"
#include "rkwave/waveop.hpp"

namespace {

using namespace rkwave;

void BM_BesselJ(benchmark::State& state) {
  const BesselOrder nu(static_cast<int>(state.range(0)));
  double z = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j(nu, z));
    z = z < 100.0 ? z * 1.01 : 0.1;
  }
}
BENCHMARK(BM_BesselJ)->Arg(0)->Arg(1)->Arg(7);

void BM_FreeKernel(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  double r = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(free_kernel(d, Sign::plus, 1.3, r));
    r = r < 50.0 ? r * 1.01 : 0.05;
  }
}
BENCHMARK(BM_FreeKernel)->Arg(1)->Arg(2)->Arg(3)->Arg(5);

void BM_FEntry(benchmark::State& state) {
  const auto phi = PotentialProfile::gaussian(static_cast<int>(state.range(0)), 1.0);
  const QuadConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f_entry(phi, phi, Sign::plus, 0.7, cfg));
  }
}
BENCHMARK(BM_FEntry)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_WaveApplyLine(benchmark::State& state) {
  const auto cfg = WaveOpConfig::make(
      PerturbationModel::rank_one(1.0, PotentialProfile::gaussian(1, 1.0)), 0.5);
  const int n = static_cast<int>(state.range(0));
  SampledField f = SampledField::line(-20.0, 40.0 / (n - 1), n);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double x;
    f.point(i, &x);
    f[i] = std::exp(cplx(-x * x / 4.5, 4.0 * x));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_w_minus(cfg, f).output.values().data());
  }
}
BENCHMARK(BM_WaveApplyLine)->Arg(101)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_AkIdentity(benchmark::State& state) {
  const auto model = PerturbationModel::rank_one(1.0, PotentialProfile::gaussian(1, 1.0));
  const auto dm = DiscreteModel::discretize(model, GridSpec{1, 40.0, static_cast<int>(state.range(0))});
  for (auto _ : state) {
    benchmark::DoNotOptimize(ak_identity_check(dm, cplx(4.0, 1e-3)).residual);
  }
}
BENCHMARK(BM_AkIdentity)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace
