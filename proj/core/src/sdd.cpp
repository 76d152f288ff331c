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

#include "phydit/sdd.hpp"

#include <set>

#include "json_io.hpp"

namespace phydit {

SystemDesign parse_sdd(std::string_view json, const Taxonomy& taxonomy) {
  return detail::read_design(detail::parse_json(json), "", taxonomy);
}

std::string serialize_sdd(const SystemDesign& design) {
  return detail::dump_json(detail::write_design(design));
}

Diagnostics validate_sdd(const SystemDesign& design, const Taxonomy& taxonomy,
                         ValidationMode mode) {
  return detail::validate_design(design, taxonomy, mode, "");
}

namespace detail {
namespace {

class Checker {
 public:
  Checker(const SystemDesign& s, const Taxonomy& t, Diagnostics& out)
      : s_(s), t_(t), out_(out) {}

  void error(std::string path, std::string message) {
    out_.push_back({Severity::kError, std::move(path), std::move(message)});
  }
  void warning(std::string path, std::string message) {
    out_.push_back({Severity::kWarning, std::move(path), std::move(message)});
  }

  void known_class(const Iri& iri, const std::string& path) {
    if (!t_.contains(iri)) error(path, "class " + iri.curie() + " is not in the taxonomy");
  }

  void variable(const ProcessVariable& v, const std::string& path) {
    try {
      canonicalize_variable(v, t_, &s_);
    } catch (const Error& e) {
      error(path, e.what());
    }
  }

  // Mechanism named on a manipulated variable but managed by no component.
  void mechanism_managed(const ProcessVariable& v, const std::string& path) {
    if (!v.mechanism || v.at_component) return;
    try {
      if (infer_component(s_, v) == nullptr)
        warning(path + "/mechanism",
                "mechanism " + v.mechanism->curie() + " is not managed by any component");
    } catch (const Error&) {
      // Reported by variable().
    }
  }

 private:
  const SystemDesign& s_;
  const Taxonomy& t_;
  Diagnostics& out_;
};

}  // namespace

Diagnostics validate_design(const SystemDesign& s, const Taxonomy& t, ValidationMode mode,
                            const std::string& path) {
  Diagnostics out;
  Checker check(s, t, out);
  const bool strict = mode == ValidationMode::kStrict;

  if (s.id.empty()) check.error(path + "/id", "design has no id");
  if (s.system_type.empty()) check.error(path + "/systemClass", "design has no system class");
  else check.known_class(s.system_type, path + "/systemClass");

  if (s.manages) {
    check.known_class(s.manages->type, path + "/manages/class");
    for (std::size_t i = 0; i < s.manages->mechanisms.size(); ++i)
      check.known_class(s.manages->mechanisms[i].type,
                        path + "/manages/mechanisms/" + std::to_string(i) + "/class");
  }

  std::set<std::string> ids;
  auto unique = [&](const std::string& id, const std::string& where) {
    if (!ids.insert(id).second) check.error(where, "duplicate id '" + id + "'");
  };

  for (std::size_t i = 0; i < s.components.size(); ++i) {
    const Component& c = s.components[i];
    const std::string here = path + "/components/" + std::to_string(i);
    unique(c.id, here + "/id");
    check.known_class(c.type, here + "/class");
    if (c.part_of) {
      if (s.find_component(*c.part_of) == nullptr) {
        check.error(here + "/partOf", "component '" + *c.part_of + "' is not declared");
      } else {
        // partOf chains must end at the system, not loop.
        std::set<std::string> seen{c.id};
        const Component* cur = s.find_component(*c.part_of);
        while (cur != nullptr) {
          if (!seen.insert(cur->id).second) {
            check.error(here + "/partOf", "partOf chain of '" + c.id + "' is cyclic");
            break;
          }
          cur = cur->part_of ? s.find_component(*cur->part_of) : nullptr;
        }
      }
    }
    if (c.manages_mechanism && s.find_mechanism(*c.manages_mechanism) == nullptr)
      check.error(here + "/managesMechanism",
                  "mechanism '" + *c.manages_mechanism + "' is not declared");
    for (std::size_t k = 0; k < c.ports.size(); ++k) {
      const std::string ppath = here + "/ports/" + std::to_string(k);
      unique(c.ports[k].id, ppath + "/id");
      check.known_class(c.ports[k].type, ppath + "/class");
      if (c.ports[k].of_component != c.id)
        check.error(ppath, "port belongs to '" + c.ports[k].of_component + "'");
    }
  }

  for (std::size_t i = 0; i < s.sensors.size(); ++i) {
    const Sensor& sensor = s.sensors[i];
    const std::string here = path + "/sensors/" + std::to_string(i);
    unique(sensor.id, here + "/id");
    if (sensor.type) check.known_class(*sensor.type, here + "/class");
    else if (strict) check.error(here + "/class", "sensor has no class");
    if (sensor.observes) check.variable(*sensor.observes, here + "/observes");
    else if (strict) check.error(here + "/observes", "sensor has no observed variable");
    if (!strict && !sensor.type && !sensor.observes)
      check.error(here, "sensor states neither a class nor an observed variable");
  }

  for (std::size_t i = 0; i < s.actuators.size(); ++i) {
    const Actuator& a = s.actuators[i];
    const std::string here = path + "/actuators/" + std::to_string(i);
    unique(a.id, here + "/id");
    if (a.type) check.known_class(*a.type, here + "/class");
    else if (strict) check.error(here + "/class", "actuator has no class");
    if (a.related_mechanism) check.known_class(*a.related_mechanism, here + "/relatedMechanism");
    if (a.manipulates) {
      check.variable(*a.manipulates, here + "/manipulates");
      check.mechanism_managed(*a.manipulates, here + "/manipulates");
    } else if (strict) {
      check.error(here + "/manipulates", "actuator has no manipulated variable");
    }
    if (!strict && !a.type && !a.manipulates)
      check.error(here, "actuator states neither a class nor a manipulated variable");
    for (std::size_t k = 0; k < a.affects.size(); ++k)
      check.variable(a.affects[k], here + "/affects/" + std::to_string(k));
  }

  for (std::size_t i = 0; i < s.specifications.size(); ++i) {
    const DesignSpecification& d = s.specifications[i];
    const std::string here = path + "/specifications/" + std::to_string(i);
    unique(d.id, here + "/id");
    check.variable(d.specified_variable, here + "/specifiedVariable");
    if (strict && !d.has_value())
      check.error(here, "specification carries no minimum, maximum or nominal value");
  }
  return out;
}

}  // namespace detail
}  // namespace phydit
