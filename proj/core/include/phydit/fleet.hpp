// Copyright 2026 The PhyDiT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "phydit/cpd.hpp"
#include "phydit/matcher.hpp"

namespace phydit {

struct FleetEntry {
  std::string twin_id;
  std::filesystem::path sdd_path;
  // "host:port"; only used when twins get their own ports.
  std::optional<std::string> listen;
};

// JSON: {"twins": [{"id": "...", "sdd": "relative/or/absolute.json",
// "listen": "127.0.0.1:9001"}]}. Relative SDD paths resolve against the
// manifest's directory.
struct FleetManifest {
  std::vector<FleetEntry> entries;

  static FleetManifest parse(std::string_view json, const std::filesystem::path& base_dir);
  static FleetManifest load(const std::filesystem::path& path);
  std::string to_json() const;
};

// One simulated embedded system: its design description and the TD
// synthesized from it.
struct Twin {
  std::string id;
  SystemDesign design;
  std::string sdd_json;
  std::optional<std::string> listen;
};

struct FleetOptions {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks a free port
  bool distinct_ports = false;
  // Twins whose /td answers 503, for fault-injection tests.
  std::set<std::string> failing_twins;
};

// Loads and validates every SDD of the manifest. Throws Error listing every
// twin that failed, with its diagnostics; ids must be unique.
std::vector<Twin> load_twins(const FleetManifest& manifest, const Taxonomy& taxonomy);

// HTTP service for a fleet. Routes on the root server:
//   GET /twins                -> JSON array of twin URLs
//   GET /twin/<id>/td         -> TD, application/td+json
//   GET /twin/<id>/model/sdd  -> source SDD
// With distinct_ports every twin also gets its own server answering /td and
// /model/sdd, and /twins lists those URLs instead. Documents are rendered once
// at start(); handlers only read immutable strings.
class FleetServer {
 public:
  FleetServer(std::vector<Twin> twins, const Taxonomy& taxonomy, FleetOptions options = {});
  ~FleetServer();
  FleetServer(const FleetServer&) = delete;
  FleetServer& operator=(const FleetServer&) = delete;

  // Binds every socket and starts serving. Throws Error on bind failure.
  void start();
  void stop();

  std::string root_url() const;
  std::vector<std::string> twin_urls() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct CrawlOptions {
  std::chrono::milliseconds timeout{2000};
  int retries = 2;  // extra attempts after the first
  std::size_t parallel = 8;
};

struct FetchFailure {
  std::string url;
  std::string message;

  friend bool operator==(const FetchFailure&, const FetchFailure&) = default;
};

struct FleetSummary {
  std::vector<TdSummary> summaries;  // sorted by TD id
  std::vector<MatchReport> reports;  // TD id order, then library order
  std::vector<FetchFailure> failures;  // sorted by URL
};

// Fetches /twins under `root_url`, then every twin's TD, and matches them
// against the library. Throws Error when the root listing cannot be fetched;
// per-twin failures are recorded and skipped.
FleetSummary crawl_and_match(const std::string& root_url,
                             const std::vector<ControlProgramDesc>& library,
                             const Taxonomy& taxonomy, const CrawlOptions& options = {},
                             const MatchOptions& match_options = {});

// Offline counterpart with the same ordering as crawl_and_match.
FleetSummary match_offline(std::vector<ThingDescription> tds,
                           const std::vector<ControlProgramDesc>& library,
                           const Taxonomy& taxonomy, const MatchOptions& match_options = {});

std::string fleet_summary_to_json(const FleetSummary& summary);

}  // namespace phydit
