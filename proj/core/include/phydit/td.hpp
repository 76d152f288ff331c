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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phydit/diagnostic.hpp"
#include "phydit/model.hpp"

namespace phydit {

inline constexpr std::string_view kTdContext = "https://www.w3.org/2022/wot/td/v1.1";

struct PropertyAffordance {
  std::string name;
  std::optional<std::string> title;
  std::optional<Iri> sensor_class;
  std::optional<ProcessVariable> observes;
  std::optional<std::string> form_href;

  friend bool operator==(const PropertyAffordance&, const PropertyAffordance&) = default;
};

struct ActionAffordance {
  std::string name;
  std::optional<std::string> title;
  std::optional<Iri> actuator_class;
  std::optional<ProcessVariable> manipulates;
  std::vector<ProcessVariable> affects;
  std::optional<Iri> mechanism_class;
  std::optional<Iri> component_class;
  std::optional<std::string> form_href;

  friend bool operator==(const ActionAffordance&, const ActionAffordance&) = default;
};

// Carried for completeness; no matching rule looks at events.
struct EventAffordance {
  std::string name;
  std::optional<std::string> title;
  std::optional<std::string> form_href;

  friend bool operator==(const EventAffordance&, const EventAffordance&) = default;
};

// A Web of Things Thing Description extended with physical-process metadata.
// Every metadata field is optional so that hand-written or ablated documents
// can be represented; the matcher treats absent metadata as unsatisfiable.
struct ThingDescription {
  std::string id;
  std::string title;
  std::optional<Iri> thing_class;
  std::optional<Iri> manages_class;
  std::optional<std::string> base_url;
  std::optional<std::string> system_model_url;
  std::optional<std::string> simulation_model_url;
  std::vector<DesignSpecification> specifications;  // keyed by id
  std::vector<PropertyAffordance> properties;
  std::vector<ActionAffordance> actions;
  std::vector<EventAffordance> events;

  friend bool operator==(const ThingDescription&, const ThingDescription&) = default;
};

// The TD metadata aspects that can be stripped for an ablation run.
enum class MetadataAspect {
  kSystemType,
  kProcessType,
  kSensorType,
  kObservedVariable,
  kPropertyComponentPosition,
  kActuatorType,
  kManipulatedVariable,
  kAffectedVariable,
  kActionComponentPosition,
  kDesignParameters,
};

inline constexpr std::array<MetadataAspect, 10> kAllAspects = {
    MetadataAspect::kSystemType,          MetadataAspect::kProcessType,
    MetadataAspect::kSensorType,          MetadataAspect::kObservedVariable,
    MetadataAspect::kPropertyComponentPosition, MetadataAspect::kActuatorType,
    MetadataAspect::kManipulatedVariable, MetadataAspect::kAffectedVariable,
    MetadataAspect::kActionComponentPosition,   MetadataAspect::kDesignParameters,
};

// Kebab-case tag, e.g. "observed-variable".
std::string_view aspect_tag(MetadataAspect aspect);
// Row label, e.g. "Property: Observed variable".
std::string_view aspect_label(MetadataAspect aspect);
// Throws Error for unknown tags.
MetadataAspect parse_aspect(std::string_view tag);

// Builds the TD of a technical system from its design description: one
// property per sensor, one action per actuator, components rendered as their
// classes. Throws Error when the design does not validate.
ThingDescription synthesize_td(const SystemDesign& design, const Taxonomy& taxonomy);

// Deterministic JSON rendering; curies are kept compact.
std::string serialize_td(const ThingDescription& td);

// Accepts `relatedTo` as an alias of `mechanism`, and `affects` as either an
// object or an array. Unknown keys are ignored. Throws ParseError on malformed
// JSON or a missing `@type`.
ThingDescription parse_td(std::string_view json, const Taxonomy& taxonomy);

// Copy of `td` with one metadata aspect removed wherever it occurs.
// Idempotent, and ablations of different aspects commute.
ThingDescription ablate_td(ThingDescription td, MetadataAspect aspect);

Diagnostics validate_td(const ThingDescription& td, const Taxonomy& taxonomy);

}  // namespace phydit
