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

// Artifact writing: atomic files, fixed-precision CSV, ordered JSON and the
// per-run manifest.

#ifndef RKWAVE_TOOLS_ARTIFACTS_HPP_
#define RKWAVE_TOOLS_ARTIFACTS_HPP_

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace rkwave::tools {

using Json = nlohmann::ordered_json;

// Writes to a sibling temp file, then renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& text);

// 17 significant digits, '.' decimal, independent of the global locale.
std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(const std::vector<double>& values);
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_; }
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::string body_;
  std::size_t rows_ = 0;
};

// JSON numbers at full precision; non-finite values become null.
Json number(double v);

struct Check {
  int criterion = 0;
  std::string name;
  double measured = 0.0;
  std::string requirement;
  bool pass = false;
};

enum class RunStatus { ok, precondition_failure, numeric_failure };

class Manifest {
 public:
  Manifest(std::string command, Json config);

  void add_artifact(const std::string& file, const std::string& schema,
                    const std::vector<std::string>& columns);
  void add_note(const std::string& note);
  void add_check(const Check& check);
  void set_status(RunStatus status, const std::string& message = {});
  void set_config(Json config) { config_ = std::move(config); }

  Json to_json() const;

 private:
  std::string command_;
  Json config_;
  Json artifacts_ = Json::array();
  Json notes_ = Json::array();
  Json checks_ = Json::array();
  RunStatus status_ = RunStatus::ok;
  std::string message_;
};

// Output directory plus the manifest of the running command.
class ArtifactSink {
 public:
  ArtifactSink(std::filesystem::path dir, Manifest manifest);

  void csv(const std::string& file, const std::string& schema,
           const CsvTable& table);
  void json(const std::string& file, const std::string& schema,
            const Json& doc);
  Manifest& manifest() { return manifest_; }
  const std::filesystem::path& dir() const { return dir_; }
  // Writes <command>.manifest.json.
  void finish(const std::string& command);

 private:
  std::filesystem::path dir_;
  Manifest manifest_;
};

}  // namespace rkwave::tools

#endif  // RKWAVE_TOOLS_ARTIFACTS_HPP_
