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

#include <optional>
#include <string>
#include <vector>

#include "phydit/vocab.hpp"

namespace phydit {

// State descriptor of a physical mechanism: what flows (stuff), what is
// measured about it (quantity kind), and where.
struct ProcessVariable {
  Iri stuff;
  Iri quantity_kind;
  std::optional<Iri> unit;
  std::optional<Iri> position;
  // Document-local component id (design documents only).
  std::optional<std::string> at_component;
  // Component class. Filled by canonicalization in design documents; the
  // only component information a Thing Description carries.
  std::optional<Iri> component_type;
  std::optional<Iri> mechanism;

  friend bool operator==(const ProcessVariable&, const ProcessVariable&) = default;
};

struct PhysicalMechanism {
  std::string id;
  Iri type;

  friend bool operator==(const PhysicalMechanism&, const PhysicalMechanism&) = default;
};

struct PhysicalProcess {
  Iri type;
  std::vector<PhysicalMechanism> mechanisms;

  friend bool operator==(const PhysicalProcess&, const PhysicalProcess&) = default;
};

struct Port {
  std::string id;
  Iri type;
  std::string of_component;

  friend bool operator==(const Port&, const Port&) = default;
};

struct Component {
  std::string id;
  Iri type;
  std::optional<std::string> part_of;
  std::vector<Port> ports;
  std::optional<std::string> manages_mechanism;  // mechanism id

  friend bool operator==(const Component&, const Component&) = default;
};

// In a system design the class and observed variable are both mandatory; an
// abstract design inside a control program may state only one of them.
struct Sensor {
  std::string id;
  std::optional<Iri> type;
  std::optional<ProcessVariable> observes;

  friend bool operator==(const Sensor&, const Sensor&) = default;
};

struct Actuator {
  std::string id;
  std::optional<Iri> type;
  std::optional<ProcessVariable> manipulates;
  std::vector<ProcessVariable> affects;  // unordered
  std::optional<Iri> related_mechanism;

  friend bool operator==(const Actuator&, const Actuator&) = default;
};

struct DesignSpecification {
  std::string id;
  ProcessVariable specified_variable;
  std::optional<double> min_value;
  std::optional<double> max_value;
  std::optional<double> nominal_value;

  bool has_value() const noexcept {
    return min_value.has_value() || max_value.has_value() || nominal_value.has_value();
  }

  friend bool operator==(const DesignSpecification&, const DesignSpecification&) = default;
};

// A concrete technical system (SDD) or the abstract system a control program
// was designed for (ASD). Both share one shape.
struct SystemDesign {
  std::string id;
  std::string title;
  Iri system_type;
  std::optional<PhysicalProcess> manages;
  std::vector<Component> components;
  std::vector<Sensor> sensors;
  std::vector<Actuator> actuators;
  std::vector<DesignSpecification> specifications;
  std::optional<std::string> base;
  std::optional<std::string> system_model;
  std::optional<std::string> simulation_model;

  const Component* find_component(std::string_view component_id) const;
  const PhysicalMechanism* find_mechanism(std::string_view mechanism_id) const;
  const Sensor* find_sensor(std::string_view sensor_id) const;
  const Actuator* find_actuator(std::string_view actuator_id) const;

  friend bool operator==(const SystemDesign&, const SystemDesign&) = default;
};

// Component that owns `v`: the explicit at_component when set, otherwise the
// unique component managing a mechanism of class `v.mechanism`. Returns
// nullptr when nothing can be inferred; throws AmbiguityError when two or
// more components manage such a mechanism, ReferenceError when an explicit
// at_component does not resolve.
const Component* infer_component(const SystemDesign& doc, const ProcessVariable& v);

// Checks every class position against the taxonomy and fills component_type
// from the owning document. Units are left alone. Idempotent.
ProcessVariable canonicalize_variable(const ProcessVariable& v, const Taxonomy& taxonomy,
                                      const SystemDesign* doc = nullptr);

// canonicalize_variable applied to every variable in the design.
void canonicalize_design(SystemDesign& doc, const Taxonomy& taxonomy);

}  // namespace phydit
