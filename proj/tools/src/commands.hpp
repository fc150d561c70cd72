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

#ifndef RKWAVE_TOOLS_COMMANDS_HPP_
#define RKWAVE_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>

#include "artifacts.hpp"
#include "config.hpp"

namespace rkwave::tools {

struct RunOptions {
  int workers = 1;
  std::uint64_t seed = 0;
};

void run_resolvent(RunConfig& cfg, ArtifactSink& sink, const RunOptions& opt);
void run_spectral_scan(RunConfig& cfg, ArtifactSink& sink, const RunOptions& opt);
void run_expansion_fit(RunConfig& cfg, ArtifactSink& sink, const RunOptions& opt);
void run_wave_apply(RunConfig& cfg, ArtifactSink& sink, const RunOptions& opt);
void run_dichotomy(RunConfig& cfg, ArtifactSink& sink, const RunOptions& opt);
void run_oracle_compare(RunConfig& cfg, ArtifactSink& sink, const RunOptions& opt);

// Aggregates the manifests in `dir`; returns the process exit code.
int run_report(const std::filesystem::path& dir);

}  // namespace rkwave::tools

#endif  // RKWAVE_TOOLS_COMMANDS_HPP_
