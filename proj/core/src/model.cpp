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

#include "phydit/model.hpp"

#include <algorithm>

namespace phydit {
namespace {

template <typename T>
const T* find_by_id(const std::vector<T>& items, std::string_view id) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
  return it == items.end() ? nullptr : &*it;
}

void require_prefix(const Iri& iri, const Taxonomy& taxonomy) {
  auto base = taxonomy.prefixes().base(iri.prefix());
  if (!base || *base + iri.local() != iri.expanded()) throw UnknownPrefixError(iri.prefix());
}

void require_class(const Iri& iri, const Taxonomy& taxonomy) {
  require_prefix(iri, taxonomy);
  if (!taxonomy.contains(iri)) throw UnknownClassError(iri.curie());
}

}  // namespace

const Component* SystemDesign::find_component(std::string_view component_id) const {
  return find_by_id(components, component_id);
}

const PhysicalMechanism* SystemDesign::find_mechanism(std::string_view mechanism_id) const {
  return manages ? find_by_id(manages->mechanisms, mechanism_id) : nullptr;
}

const Sensor* SystemDesign::find_sensor(std::string_view sensor_id) const {
  return find_by_id(sensors, sensor_id);
}

const Actuator* SystemDesign::find_actuator(std::string_view actuator_id) const {
  return find_by_id(actuators, actuator_id);
}

const Component* infer_component(const SystemDesign& doc, const ProcessVariable& v) {
  if (v.at_component) {
    const Component* c = doc.find_component(*v.at_component);
    if (c == nullptr)
      throw ReferenceError("component '" + *v.at_component + "' is not declared");
    return c;
  }
  if (!v.mechanism) return nullptr;
  const Component* found = nullptr;
  for (const Component& c : doc.components) {
    if (!c.manages_mechanism) continue;
    const PhysicalMechanism* m = doc.find_mechanism(*c.manages_mechanism);
    if (m == nullptr || m->type != *v.mechanism) continue;
    if (found != nullptr)
      throw AmbiguityError("mechanism " + v.mechanism->curie() + " is managed by both '" +
                           found->id + "' and '" + c.id + "'");
    found = &c;
  }
  return found;
}

ProcessVariable canonicalize_variable(const ProcessVariable& v, const Taxonomy& taxonomy,
                                      const SystemDesign* doc) {
  ProcessVariable out = v;
  require_class(out.stuff, taxonomy);
  require_class(out.quantity_kind, taxonomy);
  if (out.unit) require_prefix(*out.unit, taxonomy);
  if (out.position) require_class(*out.position, taxonomy);
  if (out.mechanism) require_class(*out.mechanism, taxonomy);
  if (doc != nullptr) {
    if (const Component* c = infer_component(*doc, out)) out.component_type = c->type;
  }
  if (out.component_type) require_class(*out.component_type, taxonomy);
  return out;
}

void canonicalize_design(SystemDesign& doc, const Taxonomy& taxonomy) {
  const SystemDesign snapshot = doc;
  auto fix = [&](ProcessVariable& v) { v = canonicalize_variable(v, taxonomy, &snapshot); };
  for (Sensor& s : doc.sensors)
    if (s.observes) fix(*s.observes);
  for (Actuator& a : doc.actuators) {
    if (a.manipulates) fix(*a.manipulates);
    for (ProcessVariable& v : a.affects) fix(v);
  }
  for (DesignSpecification& d : doc.specifications) fix(d.specified_variable);
}

}  // namespace phydit
