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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "phydit/corpus.hpp"
#include "phydit/sdd.hpp"
#include "support.hpp"

namespace phydit {
namespace {

using testing::shipped;

const CorpusBundle& corpus42() {
  static const CorpusBundle b = generate_corpus(42, shipped());
  return b;
}

std::vector<ThingDescription> tds_of(const CorpusBundle& b) {
  std::vector<ThingDescription> out;
  for (const SystemDesign& s : b.sdds) out.push_back(synthesize_td(s, shipped()));
  return out;
}

TEST(Corpus, ShapeAndIds) {
  const CorpusBundle& b = corpus42();
  ASSERT_EQ(b.sdds.size(), 34u);
  ASSERT_EQ(b.cpds.size(), 11u);
  EXPECT_EQ(b.sdds.front().id, "AHU-01");
  EXPECT_EQ(b.sdds.back().id, "AHU-34");
  std::set<std::string> ids;
  for (const ControlProgramDesc& c : b.cpds) ids.insert(c.id);
  for (const char* id : {"CP-AHU-1", "CP-AHU-8", "CP-VENT", "CP-FCU", "CP-VAV"}) EXPECT_TRUE(ids.count(id)) << id;
}

TEST(Corpus, DeterministicPerSeed) {
  EXPECT_EQ(generate_corpus(42, shipped()).sdds, corpus42().sdds);
  EXPECT_EQ(generate_corpus(42, shipped()).ground_truth, corpus42().ground_truth);
  EXPECT_NE(generate_corpus(43, shipped()).sdds, corpus42().sdds);
}

TEST(Corpus, EveryDocumentValidates) {
  for (const SystemDesign& s : corpus42().sdds) EXPECT_TRUE(validate_sdd(s, shipped()).empty()) << s.id;
  for (const ControlProgramDesc& c : corpus42().cpds) EXPECT_TRUE(validate_cpd(c, shipped()).empty()) << c.id;
}

TEST(Corpus, NoTwoUnitsAreIdentical) {
  const auto& sdds = corpus42().sdds;
  for (std::size_t i = 0; i < sdds.size(); ++i)
    for (std::size_t j = i + 1; j < sdds.size(); ++j) {
      SystemDesign a = sdds[i], b = sdds[j];
      a.id = b.id = "";
      a.title = b.title = "";
      EXPECT_NE(a, b) << sdds[i].id << " vs " << sdds[j].id;
    }
}

// The matcher never sees the labels; agreement is checked here.
class CorpusSeeds : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(CorpusSeeds, MatcherReproducesGroundTruth) {
  const CorpusBundle b = generate_corpus(GetParam(), shipped());
  const MatchMatrix m = match_all(tds_of(b), b.cpds, shipped());
  std::size_t unique = 0, multi = 0, none = 0;
  for (std::size_t i = 0; i < b.sdds.size(); ++i) {
    EXPECT_EQ(m.summaries[i].matches, b.ground_truth[i].expected) << b.sdds[i].id;
    switch (m.summaries[i].outcome) {
      case MatchOutcome::kUnique: ++unique; break;
      case MatchOutcome::kMulti: ++multi; break;
      case MatchOutcome::kNone: ++none; break;
    }
  }
  EXPECT_EQ(unique, 31u);
  EXPECT_EQ(multi, 1u);
  EXPECT_EQ(none, 2u);
  EXPECT_EQ(b.ground_truth[0].expected.size(), 1u);
  EXPECT_EQ(b.ground_truth[6].expected.size(), 1u);
}

INSTANTIATE_TEST_SUITE_P(Seeds, CorpusSeeds, ::testing::Values(1u, 7u, 42u, 1234u, 99991u));

TEST(Corpus, DoubleMatchRanksDeeperSystemClassFirst) {
  const CorpusBundle& b = corpus42();
  for (const GroundTruthEntry& g : b.ground_truth)
    if (g.expected.size() == 2) EXPECT_EQ(g.expected, (std::vector<std::string>{"CP-AHU-7", "CP-AHU-6"}));
}

TEST(Corpus, NoMatchUnitsHaveTheValveOnTheOutlet) {
  const CorpusBundle& b = corpus42();
  std::size_t seen = 0;
  for (std::size_t i = 0; i < b.sdds.size(); ++i) {
    if (!b.ground_truth[i].expected.empty()) continue;
    ++seen;
    const Actuator* valve = b.sdds[i].find_actuator("heating-valve");
    ASSERT_NE(valve, nullptr);
    EXPECT_EQ(valve->manipulates->position->curie(), "elem:outlet");
    // Moving it back to the inlet restores the deployed program.
    SystemDesign fixed = b.sdds[i];
    for (Actuator& a : fixed.actuators)
      if (a.id == "heating-valve") a.manipulates->position = shipped().resolve("elem:inlet");
    const ThingDescription td = synthesize_td(fixed, shipped());
    bool any = false;
    for (const ControlProgramDesc& c : b.cpds)
      if (c.id == b.ground_truth[i].deployed) any = match(td, c, shipped()).overall;
    EXPECT_TRUE(any);
  }
  EXPECT_EQ(seen, 2u);
}

TEST(Corpus, WriteLoadRoundTrip) {
  const auto dir = testing::scratch("corpus");
  write_corpus(corpus42(), dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
  const CorpusBundle back = load_corpus(dir, shipped());
  EXPECT_EQ(back.seed, 42u);
  EXPECT_EQ(back.sdds, corpus42().sdds);
  EXPECT_EQ(back.cpds, corpus42().cpds);
  EXPECT_EQ(back.ground_truth, corpus42().ground_truth);
  // A second write over the old one leaves no stale files.
  write_corpus(corpus42(), dir);
  EXPECT_EQ(list_json_files(dir / "sdd").size(), 34u);
}

TEST(Ablation, TableFourShape) {
  const AblationReport r = ablation_study(corpus42(), shipped());
  EXPECT_EQ(r.successful, 32u);
  ASSERT_EQ(r.groups.size(), 4u);
  std::vector<std::size_t> sizes;
  for (const AblationGroup& g : r.groups) sizes.push_back(g.td_ids.size());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{4, 8, 16, 4}));
  std::map<MetadataAspect, std::size_t> counts;
  for (const AspectNecessity& a : r.aspects) counts[a.aspect] = a.necessary;
  // Counts out of 32; the percentages follow from these.
  EXPECT_EQ(counts[MetadataAspect::kSystemType], 32u);
  EXPECT_EQ(counts[MetadataAspect::kProcessType], 28u);
  EXPECT_EQ(counts[MetadataAspect::kSensorType], 12u);
  EXPECT_EQ(counts[MetadataAspect::kObservedVariable], 20u);
  EXPECT_EQ(counts[MetadataAspect::kPropertyComponentPosition], 4u);
  EXPECT_EQ(counts[MetadataAspect::kActuatorType], 32u);
  EXPECT_EQ(counts[MetadataAspect::kManipulatedVariable], 20u);
  EXPECT_EQ(counts[MetadataAspect::kAffectedVariable], 20u);
  EXPECT_EQ(counts[MetadataAspect::kActionComponentPosition], 20u);
  EXPECT_EQ(counts[MetadataAspect::kDesignParameters], 4u);
}

TEST(Ablation, GroupsAgreeWithGroundTruthLabels) {
  const AblationReport r = ablation_study(corpus42(), shipped());
  std::map<std::string, std::string> label;
  for (const GroundTruthEntry& g : corpus42().ground_truth)
    if (g.group) label[g.sdd_id] = *g.group;
  for (const AblationGroup& g : r.groups)
    for (const std::string& td : g.td_ids) EXPECT_EQ(label[td], g.label) << td;
}

TEST(Ablation, PercentagesAreFloored) {
  const AblationReport r = ablation_study(corpus42(), shipped());
  for (const AspectNecessity& a : r.aspects)
    EXPECT_EQ(a.percent, static_cast<int>(100 * a.necessary / r.successful)) << aspect_tag(a.aspect);
}

TEST(Ablation, RenderedTableHasOneRowPerAspect) {
  const std::string table = render_ablation_table(ablation_study(corpus42(), shipped()));
  EXPECT_NE(table.find("(16)"), std::string::npos);
  EXPECT_NE(table.find("General: System type (100%)"), std::string::npos);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 12);
}

}  // namespace
}  // namespace phydit
