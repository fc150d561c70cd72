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

#include "artifacts.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "rkwave/version.hpp"

namespace rkwave::tools {

namespace fs = std::filesystem;

void write_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("rename to " + path.string() + ": " + ec.message());
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v,
                               std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

CsvTable::CsvTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != columns_.size()) {
    throw std::logic_error("csv row width mismatch");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) body_ += ',';
    body_ += format_number(values[i]);
  }
  body_ += '\n';
  ++rows_;
}

std::string CsvTable::str() const {
  std::string head;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) head += ',';
    head += columns_[i];
  }
  return head + '\n' + body_;
}

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Manifest::Manifest(std::string command, Json config)
    : command_(std::move(command)), config_(std::move(config)) {}

void Manifest::add_artifact(const std::string& file, const std::string& schema,
                            const std::vector<std::string>& columns) {
  Json a;
  a["file"] = file;
  a["schema"] = schema;
  if (!columns.empty()) a["columns"] = columns;
  artifacts_.push_back(a);
}

void Manifest::add_note(const std::string& note) { notes_.push_back(note); }

void Manifest::add_check(const Check& c) {
  Json j;
  j["criterion"] = c.criterion;
  j["name"] = c.name;
  j["measured"] = number(c.measured);
  j["requirement"] = c.requirement;
  j["pass"] = c.pass;
  checks_.push_back(j);
}

void Manifest::set_status(RunStatus status, const std::string& message) {
  status_ = status;
  message_ = message;
}

Json Manifest::to_json() const {
  Json m;
  m["tool"] = "rkwave";
  m["version"] = kVersion;
  m["command"] = command_;
  switch (status_) {
    case RunStatus::ok: m["status"] = "ok"; break;
    case RunStatus::precondition_failure: m["status"] = "precondition-failure"; break;
    case RunStatus::numeric_failure: m["status"] = "numeric-failure"; break;
  }
  m["partial"] = status_ == RunStatus::numeric_failure;
  if (!message_.empty()) m["message"] = message_;
  m["config"] = config_;
  m["artifacts"] = artifacts_;
  m["notes"] = notes_;
  m["checks"] = checks_;
  return m;
}

ArtifactSink::ArtifactSink(fs::path dir, Manifest manifest)
    : dir_(std::move(dir)), manifest_(std::move(manifest)) {
  fs::create_directories(dir_);
}

void ArtifactSink::csv(const std::string& file, const std::string& schema,
                       const CsvTable& table) {
  write_atomic(dir_ / file, table.str());
  manifest_.add_artifact(file, schema, table.columns());
}

void ArtifactSink::json(const std::string& file, const std::string& schema,
                        const Json& doc) {
  write_atomic(dir_ / file, doc.dump(2) + "\n");
  manifest_.add_artifact(file, schema, {});
}

void ArtifactSink::finish(const std::string& command) {
  write_atomic(dir_ / (command + ".manifest.json"),
               manifest_.to_json().dump(2) + "\n");
}

}  // namespace rkwave::tools
