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

#include <string>

#include "phydit/cpd.hpp"
#include "support.hpp"

namespace phydit {
namespace {

using testing::fixture;
using testing::shipped;

TEST(Cpd, ParsesCombustionFixture) {
  const ControlProgramDesc c = parse_cpd(fixture("combustion-control.cpd.json"), shipped());
  EXPECT_EQ(c.id, "CP-BOILER-COMBUSTION");
  ASSERT_EQ(c.asds.size(), 1u);
  ASSERT_EQ(c.inputs.size(), 1u);
  ASSERT_EQ(c.outputs.size(), 1u);
  ASSERT_NE(c.find_actuator("fuel-valve"), nullptr);
  EXPECT_EQ(c.find_actuator("fuel-valve")->manipulates->component_type->curie(), "hvac:Burner");
  ASSERT_EQ(c.parameters.size(), 1u);
  EXPECT_FALSE(c.parameters[0].specified_by.has_value());
  EXPECT_TRUE(validate_cpd(c, shipped()).empty());
}

TEST(Cpd, RoundTrip) {
  const ControlProgramDesc c = parse_cpd(fixture("combustion-control.cpd.json"), shipped());
  EXPECT_EQ(parse_cpd(serialize_cpd(c), shipped()), c);
}

TEST(Cpd, DanglingIntendedForIsAReferenceError) {
  std::string text = fixture("combustion-control.cpd.json");
  text.replace(text.find("\"intendedFor\": \"fuel-valve\""), 27, "\"intendedFor\": \"gas-valve\"");
  EXPECT_THROW((void)parse_cpd(text, shipped()), ReferenceError);
}

TEST(Cpd, RelaxedAsdAcceptsClassOnlyAndObservesOnly) {
  ControlProgramDesc c = parse_cpd(fixture("combustion-control.cpd.json"), shipped());
  c.asds[0].sensors[0].type.reset();
  c.asds[0].actuators[0].manipulates.reset();
  c.asds[0].actuators[0].affects.clear();
  EXPECT_TRUE(validate_cpd(c, shipped()).empty());
  c.asds[0].sensors[0].observes.reset();
  EXPECT_FALSE(validate_cpd(c, shipped()).empty());
}

TEST(Cpd, MultipleAsdsShareOneIdSpace) {
  ControlProgramDesc c = parse_cpd(fixture("combustion-control.cpd.json"), shipped());
  SystemDesign second = c.asds[0];
  second.id = "asd-2";
  c.asds.push_back(second);
  EXPECT_THROW((void)parse_cpd(serialize_cpd(c), shipped()), Error);
  c.asds[1].sensors[0].id = "other";
  c.asds[1].actuators[0].id = "other-valve";
  const ControlProgramDesc back = parse_cpd(serialize_cpd(c), shipped());
  EXPECT_EQ(back.asds.size(), 2u);
  EXPECT_NE(back.find_sensor("other"), nullptr);
}

TEST(Cpd, LibraryLoadsInNameOrderAndRejectsDuplicates) {
  const auto dir = testing::scratch("cpdlib");
  const std::string text = fixture("combustion-control.cpd.json");
  write_text_file(dir / "b.json", text);
  std::string other = text;
  other.replace(other.find("CP-BOILER-COMBUSTION"), 20, "CP-ALPHA");
  write_text_file(dir / "a.json", other);
  write_text_file(dir / "notes.txt", "ignored");
  const auto lib = load_cpd_library(dir, shipped());
  ASSERT_EQ(lib.size(), 2u);
  EXPECT_EQ(lib[0].id, "CP-ALPHA");
  write_text_file(dir / "c.json", text);
  EXPECT_THROW((void)load_cpd_library(dir, shipped()), Error);
  EXPECT_THROW((void)load_cpd_library(dir / "missing", shipped()), Error);
}

TEST(Cpd, BrokenFileIsNamedInTheError) {
  const auto dir = testing::scratch("cpdbroken");
  write_text_file(dir / "bad.json", "{\"id\": 3}");
  try {
    (void)load_cpd_library(dir, shipped());
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("bad.json"), std::string::npos);
  }
}

}  // namespace
}  // namespace phydit
