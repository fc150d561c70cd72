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

#include <fstream>
#include <iostream>
#include <map>

#include "commands.hpp"

namespace rkwave::tools {

namespace fs = std::filesystem;

namespace {

const char* kCriteria[12] = {
    "Special functions: Wronskian identity",
    "Free kernel closed forms",
    "Oscillatory decay rates",
    "Low-energy coefficients",
    "Finite-rank leading coefficient",
    "Aronszajn-Krein identity",
    "Stationary vs time-limit oracle",
    "Isometry and identity limits",
    "L1 dichotomy",
    "Weak-(1,1) vs L1",
    "Multiplier kernel decay",
    "Determinism",
};

}  // namespace

int run_report(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    std::cerr << "report: " << dir.string() << " is not a directory\n";
    return 2;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && name.size() > 14 &&
        name.ends_with(".manifest.json") && name != "report.manifest.json") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "report: no manifests in " << dir.string() << "\n";
    return 2;
  }

  Json runs = Json::array();
  Json corrupt = Json::array();
  std::map<int, std::vector<Json>> by_criterion;
  for (const auto& p : files) {
    Json m;
    try {
      std::ifstream in(p);
      m = Json::parse(in);
      if (!m.contains("command") || !m.contains("checks")) {
        throw std::runtime_error("missing fields");
      }
    } catch (const std::exception& e) {
      Json c;
      c["file"] = p.filename().string();
      c["error"] = e.what();
      corrupt.push_back(c);
      continue;
    }
    Json r;
    r["manifest"] = p.filename().string();
    r["command"] = m["command"];
    r["status"] = m.value("status", "unknown");
    runs.push_back(r);
    for (const auto& c : m["checks"]) {
      Json entry = c;
      entry["source"] = p.filename().string();
      by_criterion[c.value("criterion", 0)].push_back(entry);
    }
  }

  Json table = Json::array();
  std::string md = "# rkwave report\n\n| # | criterion | status | measured | requirement | source |\n"
                   "|---|---|---|---|---|---|\n";
  for (int k = 1; k <= 12; ++k) {
    Json row;
    row["criterion"] = k;
    row["title"] = kCriteria[k - 1];
    const auto it = by_criterion.find(k);
    if (it == by_criterion.end()) {
      row["status"] = "not-run";
      row["checks"] = Json::array();
      md += "| " + std::to_string(k) + " | " + kCriteria[k - 1] + " | not-run | | | |\n";
    } else {
      bool pass = true;
      for (const auto& c : it->second) pass = pass && c.value("pass", false);
      row["status"] = pass ? "pass" : "fail";
      row["checks"] = it->second;
      for (const auto& c : it->second) {
        const std::string measured =
            c["measured"].is_null() ? "n/a" : format_number(c["measured"].get<double>());
        md += "| " + std::to_string(k) + " | " + c.value("name", "") + " | " +
              (c.value("pass", false) ? "pass" : "fail") + " | " + measured + " | " +
              c.value("requirement", "") + " | " + c.value("source", "") + " |\n";
      }
    }
    table.push_back(row);
  }
  if (!corrupt.empty()) {
    md += "\nUnreadable manifests:\n\n";
    for (const auto& c : corrupt) {
      md += "- " + c["file"].get<std::string>() + ": " + c["error"].get<std::string>() + "\n";
    }
  }
  Json doc;
  doc["runs"] = runs;
  doc["criteria"] = table;
  doc["corrupt_manifests"] = corrupt;
  write_atomic(dir / "report.json", doc.dump(2) + "\n");
  write_atomic(dir / "report.md", md);
  std::cout << md;
  return 0;
}

}  // namespace rkwave::tools
