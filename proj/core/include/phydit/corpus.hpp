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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "phydit/cpd.hpp"
#include "phydit/matcher.hpp"
#include "phydit/td.hpp"

namespace phydit {

struct GroundTruthEntry {
  std::string sdd_id;
  std::string deployed;                // CP chosen at commissioning
  std::vector<std::string> expected;   // CPDs the rules should suggest, ranked
  std::optional<std::string> group;    // ablation group label, when matched

  friend bool operator==(const GroundTruthEntry&, const GroundTruthEntry&) = default;
};

// A synthetic evaluation corpus of air-handling units and control programs.
// The construction is engineered so that the labels below hold; the matcher
// never sees them.
struct CorpusBundle {
  std::uint64_t seed = 0;
  std::vector<SystemDesign> sdds;         // AHU-01 .. AHU-34
  std::vector<ControlProgramDesc> cpds;   // 8 AHU programs, then the near misses
  std::vector<GroundTruthEntry> ground_truth;  // one per SDD, same order
};

// Deterministic for a given seed on every platform.
CorpusBundle generate_corpus(std::uint64_t seed, const Taxonomy& taxonomy);

// Layout: sdd/<id>.json, cpd/<id>.json, ground-truth.json, manifest.json.
void write_corpus(const CorpusBundle& corpus, const std::filesystem::path& dir);
CorpusBundle load_corpus(const std::filesystem::path& dir, const Taxonomy& taxonomy);

std::string ground_truth_to_json(const CorpusBundle& corpus);

struct AspectNecessity {
  MetadataAspect aspect;
  std::size_t necessary = 0;  // successful matches that lose the correct CPD
  int percent = 0;            // floor(100 * necessary / successful)
};

struct AblationGroup {
  std::string label;  // "A", "B", ...
  std::vector<MetadataAspect> necessary;
  std::vector<std::string> td_ids;
};

struct AblationReport {
  std::size_t successful = 0;  // TDs whose match set equals the ground truth
  std::vector<AspectNecessity> aspects;  // kAllAspects order
  // Ordered by number of necessary aspects, then aspect order.
  std::vector<AblationGroup> groups;
};

// Re-matches every correctly matched TD with each aspect removed. An aspect
// is necessary for a TD when at least one of its correct CPDs stops matching.
AblationReport ablation_study(const CorpusBundle& corpus, const Taxonomy& taxonomy,
                              const MatchOptions& options = {});

std::string ablation_to_json(const AblationReport& report);
// Aspect rows against group columns, group sizes in brackets.
std::string render_ablation_table(const AblationReport& report);

}  // namespace phydit
