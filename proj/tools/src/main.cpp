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

// rkwave command-line front end.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "commands.hpp"
#include "rkwave/errors.hpp"

namespace {

using namespace rkwave::tools;
using Runner = void (*)(RunConfig&, ArtifactSink&, const RunOptions&);

struct Common {
  std::string config;
  std::string out = "rkwave-out";
  int workers = 1;
  std::uint64_t seed = 0;
};

int execute(const std::string& name, Runner fn, const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg;
  try {
    cfg = RunConfig::load(c.config);
  } catch (const rkwave::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (c.workers < 1) {
    std::cerr << "error: --workers must be >= 1\n";
    return 2;
  }
  cfg.set("run", "config", c.config);
  cfg.set("run", "workers", c.workers);
  cfg.set("run", "seed", c.seed);
  RunOptions opt{c.workers, c.seed};

  std::unique_ptr<ArtifactSink> sink;
  try {
    sink = std::make_unique<ArtifactSink>(c.out, Manifest(name, Json::object()));
  } catch (const std::exception& e) {
    std::cerr << "error: cannot use output directory " << c.out << ": " << e.what() << "\n";
    return 2;
  }
  int code = 0;
  try {
    fn(cfg, *sink, opt);
  } catch (const rkwave::PreconditionError& e) {
    std::cerr << "precondition failure: " << e.what() << "\n";
    sink->manifest().set_status(RunStatus::precondition_failure, e.what());
    code = 2;
  } catch (const rkwave::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    sink->manifest().set_status(RunStatus::numeric_failure, e.what());
    code = 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    sink->manifest().set_status(RunStatus::precondition_failure, e.what());
    code = 2;
  }
  sink->manifest().set_config(cfg.resolved());
  try {
    sink->finish(name);
  } catch (const std::exception& e) {
    std::cerr << "error: writing manifest: " << e.what() << "\n";
    return code ? code : 2;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << name << ": " << (code == 0 ? "ok" : "failed") << " in " << secs << " s\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rkwave: wave operators for finite-rank perturbations of the Laplacian"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config, "INI run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", common.out, "artifact directory");
  app.add_option("--workers", common.workers, "worker threads");
  app.add_option("--seed", common.seed, "seed for sampled sweeps");
  app.fallthrough();

  struct Entry {
    const char* name;
    const char* help;
    Runner fn;
  };
  const Entry entries[] = {
      {"resolvent", "dump free resolvent kernel parts on an r grid", run_resolvent},
      {"spectral-scan", "scan F, A, G and |det A| over lambda", run_spectral_scan},
      {"expansion-fit", "fit the low-energy expansion of F", run_expansion_fit},
      {"wave-apply", "apply W_- to a sampled source", run_wave_apply},
      {"dichotomy", "R sweep of the Hilbert piece and low-energy part", run_dichotomy},
      {"oracle-compare", "stationary formula vs periodic-box time limit", run_oracle_compare},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) subs.emplace_back(app.add_subcommand(e.name, e.help), &e);
  subs.front().first->alias("kernel-dump");
  CLI::App* report = app.add_subcommand("report", "aggregate manifests in --out into a pass/fail table");
  std::string report_dir;
  report->add_option("dir", report_dir, "artifact directory (defaults to --out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (report->parsed()) {
    return run_report(report_dir.empty() ? common.out : report_dir);
  }
  for (const auto& [sub, e] : subs) {
    if (sub->parsed()) return execute(e->name, e->fn, common);
  }
  return 2;
}
