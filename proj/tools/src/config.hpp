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

// INI run configuration.  Every value read (or defaulted) is echoed into
// resolved() so the manifest records the complete effective config.

#ifndef RKWAVE_TOOLS_CONFIG_HPP_
#define RKWAVE_TOOLS_CONFIG_HPP_

#include <boost/property_tree/ptree.hpp>
#include <optional>
#include <string>
#include <vector>

#include "artifacts.hpp"
#include "rkwave/fields.hpp"
#include "rkwave/model.hpp"
#include "rkwave/oracle.hpp"
#include "rkwave/waveop.hpp"

namespace rkwave::tools {

class RunConfig {
 public:
  // Empty path: every value takes its default.
  static RunConfig load(const std::string& path);

  double number(const std::string& section, const std::string& key,
                double fallback);
  int integer(const std::string& section, const std::string& key, int fallback);
  bool flag(const std::string& section, const std::string& key, bool fallback);
  std::string text(const std::string& section, const std::string& key,
                   const std::string& fallback);
  std::vector<double> list(const std::string& section, const std::string& key,
                           const std::vector<double>& fallback);
  // Records a value that came from the command line.
  void set(const std::string& section, const std::string& key, const Json& v);

  bool has_section(const std::string& section) const;

  const Json& resolved() const { return resolved_; }
  const std::string& path() const { return path_; }

  // Derived objects.
  PerturbationModel model();
  QuadConfig quadrature();
  WaveOpConfig wave(const PerturbationModel& model);
  // Source field on its own grid; d = 2 grids are square with a power-of-two
  // point count so the factorized route applies.
  SampledField source(int d);
  // Samples the configured source onto an existing grid.
  void fill_source(SampledField& f);
  GridSpec oracle_grid(int d);

 private:
  const boost::property_tree::ptree* section(const std::string& name) const;
  std::optional<std::string> raw(const std::string& section,
                                 const std::string& key) const;
  PotentialProfile profile(const std::string& name, int d);

  boost::property_tree::ptree tree_;
  Json resolved_ = Json::object();
  std::string path_;
};

std::vector<double> parse_list(const std::string& text);

}  // namespace rkwave::tools

#endif  // RKWAVE_TOOLS_CONFIG_HPP_
