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

#include <json.hpp>

#include "phydit/sdd.hpp"
#include "phydit/td.hpp"
#include "support.hpp"

namespace phydit {
namespace {

using nlohmann::json;
using testing::fixture;
using testing::shipped;

ThingDescription boiler_td() { return synthesize_td(parse_sdd(fixture("boiler.sdd.json"), shipped()), shipped()); }

TEST(Td, SynthesizedBoilerContainsGoldenMetadata) {
  const json actual = json::parse(serialize_td(boiler_td()));
  const json golden = json::parse(fixture("boiler.td.golden.json"));
  std::string where;
  EXPECT_TRUE(testing::json_contains(actual, golden, where)) << "differs at " << where;
}

TEST(Td, GoldenComparisonIgnoresKeyOrderButNotValues) {
  json actual = json::parse(serialize_td(boiler_td()));
  std::string where;
  actual["specification"]["min-water-flowrate"]["hasMinValue"] = 49;
  EXPECT_FALSE(testing::json_contains(actual, json::parse(fixture("boiler.td.golden.json")), where));
  EXPECT_EQ(where, "/specification/min-water-flowrate/hasMinValue");
}

TEST(Td, SynthesisMapsDesignToAffordances) {
  const ThingDescription td = boiler_td();
  EXPECT_EQ(td.id, "urn:boiler-01");
  EXPECT_EQ(td.thing_class->curie(), "brick:Boiler");
  EXPECT_EQ(td.manages_class->curie(), "hvac:EnergyConversion");
  EXPECT_EQ(td.system_model_url, "/model/tsd-blr-01.rdf");
  ASSERT_EQ(td.actions.size(), 1u);
  const ActionAffordance& a = td.actions[0];
  EXPECT_EQ(a.name, "fuel-valve-actuation");
  EXPECT_EQ(a.mechanism_class->curie(), "hvac:Combustion");
  EXPECT_EQ(a.component_class->curie(), "hvac:Burner");
  // Local ids never leak into a TD.
  EXPECT_FALSE(a.manipulates->at_component.has_value());
  EXPECT_FALSE(a.manipulates->mechanism.has_value());
  EXPECT_TRUE(validate_td(td, shipped()).empty());
}

TEST(Td, SynthesisRefusesInvalidDesign) {
  SystemDesign d = parse_sdd(fixture("boiler.sdd.json"), shipped());
  d.sensors[0].type.reset();
  EXPECT_THROW((void)synthesize_td(d, shipped()), Error);
}

TEST(Td, DefaultSystemModelLink) {
  SystemDesign d = parse_sdd(fixture("boiler.sdd.json"), shipped());
  d.system_model.reset();
  EXPECT_EQ(synthesize_td(d, shipped()).system_model_url, "/model/sdd");
}

TEST(Td, RoundTripIsLossless) {
  const ThingDescription td = boiler_td();
  const std::string text = serialize_td(td);
  EXPECT_EQ(parse_td(text, shipped()), td);
  EXPECT_EQ(serialize_td(parse_td(text, shipped())), text);
}

TEST(Td, PlainBoilerTdParsesWithoutPhysics) {
  const ThingDescription td = parse_td(fixture("boiler-01.plain.td.json"), shipped());
  EXPECT_EQ(td.id, "urn:boiler-01");
  EXPECT_EQ(td.base_url, "http://blr-01");
  ASSERT_EQ(td.properties.size(), 1u);
  EXPECT_FALSE(td.properties[0].observes.has_value());
  EXPECT_EQ(td.properties[0].form_href, "/sensors/twout");
  ASSERT_EQ(td.actions.size(), 1u);
  EXPECT_FALSE(td.actions[0].manipulates.has_value());
  ASSERT_EQ(td.events.size(), 1u);
  EXPECT_EQ(td.events[0].name, "high-temperature-alarm");
  EXPECT_TRUE(validate_td(td, shipped()).empty());
}

TEST(Td, AlternateKeySpellingsAreAccepted) {
  // relatedTo for mechanism, affects as a single object, @type as an array.
  const char* text = R"({
    "@context": "https://www.w3.org/2022/wot/td/v1.1",
    "id": "b", "title": "b", "@type": ["Thing", "brick:Boiler"],
    "actions": {"fuel": {
      "actuator": {"@type": "brick:Valve"},
      "relatedTo": {"@type": "hvac:Combustion"},
      "manipulates": {"atComponent": {"@type": "hvac:Burner"}, "stuff": "brick:Fuel",
                      "position": "elem:inlet", "quantityKind": "qudt:VolumeFlowRate", "note": "x"},
      "affects": {"atComponent": {"@type": "hvac:BoilerTube"}, "stuff": "brick:Water", "quantityKind": "qudt:Temperature"}}}
  })";
  const ThingDescription td = parse_td(text, shipped());
  EXPECT_EQ(td.thing_class->curie(), "brick:Boiler");
  ASSERT_EQ(td.actions.size(), 1u);
  EXPECT_EQ(td.actions[0].mechanism_class->curie(), "hvac:Combustion");
  ASSERT_EQ(td.actions[0].affects.size(), 1u);
  EXPECT_EQ(td.actions[0].affects[0].component_type->curie(), "hvac:BoilerTube");
}

TEST(Td, MalformedInputThrows) {
  EXPECT_THROW((void)parse_td("[]", shipped()), ParseError);
  EXPECT_THROW((void)parse_td(R"({"id": "x", "title": "x"})", shipped()), ParseError);
  try {
    (void)parse_td(R"({"id": "x", "@type": "zz:Q"})", shipped());
    FAIL() << "unknown prefix accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.path(), "/@type");
    EXPECT_NE(std::string(e.what()).find("unknown prefix 'zz'"), std::string::npos);
  }
}

TEST(Td, ValidationFlagsUnknownClasses) {
  ThingDescription td = boiler_td();
  td.actions[0].actuator_class = shipped().resolve("brick:Toaster");
  const Diagnostics d = validate_td(td, shipped());
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NE(d[0].message.find("brick:Toaster"), std::string::npos);
}

TEST(Td, AspectTagsRoundTrip) {
  for (MetadataAspect a : kAllAspects) EXPECT_EQ(parse_aspect(aspect_tag(a)), a);
  EXPECT_THROW((void)parse_aspect("colour"), Error);
  EXPECT_EQ(kAllAspects.size(), 10u);
}

TEST(Td, AblationRemovesOnlyItsAspect) {
  const ThingDescription td = boiler_td();
  const ThingDescription no_obs = ablate_td(td, MetadataAspect::kObservedVariable);
  EXPECT_FALSE(no_obs.properties[0].observes.has_value());
  EXPECT_EQ(no_obs.properties[0].sensor_class, td.properties[0].sensor_class);
  EXPECT_EQ(no_obs.actions, td.actions);

  const ThingDescription no_place = ablate_td(td, MetadataAspect::kActionComponentPosition);
  EXPECT_FALSE(no_place.actions[0].manipulates->position.has_value());
  EXPECT_FALSE(no_place.actions[0].manipulates->component_type.has_value());
  EXPECT_EQ(no_place.actions[0].manipulates->stuff, td.actions[0].manipulates->stuff);
  EXPECT_EQ(no_place.properties, td.properties);

  EXPECT_TRUE(ablate_td(td, MetadataAspect::kDesignParameters).specifications.empty());
}

TEST(Td, AblationIsIdempotentAndCommutes) {
  const ThingDescription td = boiler_td();
  for (MetadataAspect a : kAllAspects) {
    EXPECT_EQ(ablate_td(ablate_td(td, a), a), ablate_td(td, a)) << aspect_tag(a);
    for (MetadataAspect b : kAllAspects)
      EXPECT_EQ(ablate_td(ablate_td(td, a), b), ablate_td(ablate_td(td, b), a))
          << aspect_tag(a) << " / " << aspect_tag(b);
  }
}

}  // namespace
}  // namespace phydit
