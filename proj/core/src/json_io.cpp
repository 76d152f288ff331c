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

#include "json_io.hpp"

#include <algorithm>
#include <set>

namespace phydit::detail {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string child_path(const std::string& path, std::string_view key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return path + "/" + escaped;
}

std::string child_path(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const Json& require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  return j;
}

const Json* find(const Json& obj, std::string_view key) {
  auto it = obj.find(std::string(key));
  return it == obj.end() ? nullptr : &*it;
}

void check_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw ParseError(child_path(path, it.key()), "unexpected key");
  }
}

std::string get_string(const Json& obj, std::string_view key, const std::string& path) {
  const Json* v = find(obj, key);
  if (v == nullptr) throw ParseError(child_path(path, key), "missing required key");
  if (!v->is_string()) throw ParseError(child_path(path, key), "expected a string");
  return v->get<std::string>();
}

std::optional<std::string> get_opt_string(const Json& obj, std::string_view key,
                                          const std::string& path) {
  const Json* v = find(obj, key);
  if (v == nullptr || v->is_null()) return std::nullopt;
  if (!v->is_string()) throw ParseError(child_path(path, key), "expected a string");
  return v->get<std::string>();
}

std::optional<double> get_opt_number(const Json& obj, std::string_view key,
                                      const std::string& path) {
  const Json* v = find(obj, key);
  if (v == nullptr || v->is_null()) return std::nullopt;
  if (!v->is_number()) throw ParseError(child_path(path, key), "expected a number");
  return v->get<double>();
}

Iri to_iri(const Json& value, const std::string& path, const PrefixTable& prefixes) {
  if (!value.is_string()) throw ParseError(path, "expected a prefix:local string");
  try {
    return prefixes.resolve(value.get<std::string>());
  } catch (const UnknownPrefixError& e) {
    throw ParseError(path, e.what());
  } catch (const ParseError& e) {
    throw ParseError(path, e.what());
  }
}

Iri get_iri(const Json& obj, std::string_view key, const std::string& path,
            const PrefixTable& prefixes) {
  const Json* v = find(obj, key);
  if (v == nullptr) throw ParseError(child_path(path, key), "missing required key");
  return to_iri(*v, child_path(path, key), prefixes);
}

std::optional<Iri> get_opt_iri(const Json& obj, std::string_view key, const std::string& path,
                               const PrefixTable& prefixes) {
  const Json* v = find(obj, key);
  if (v == nullptr || v->is_null()) return std::nullopt;
  return to_iri(*v, child_path(path, key), prefixes);
}

Iri get_typed(const Json& obj, std::string_view key, const std::string& path,
              const PrefixTable& prefixes) {
  auto iri = get_opt_typed(obj, key, path, prefixes);
  if (!iri) throw ParseError(child_path(path, key), "missing required key");
  return *iri;
}

std::optional<Iri> get_opt_typed(const Json& obj, std::string_view key,
                                 const std::string& path, const PrefixTable& prefixes) {
  const Json* v = find(obj, key);
  if (v == nullptr || v->is_null()) return std::nullopt;
  const std::string here = child_path(path, key);
  // A bare string is tolerated as shorthand for {"@type": ...}.
  if (v->is_string()) return to_iri(*v, here, prefixes);
  require_object(*v, here);
  return get_iri(*v, "@type", here, prefixes);
}

Json typed(const Iri& iri) {
  Json j = Json::object();
  j["@type"] = iri.curie();
  return j;
}

ProcessVariable read_variable(const Json& j, const std::string& path,
                              const PrefixTable& prefixes) {
  require_object(j, path);
  check_keys(j, {"stuff", "quantityKind", "unit", "position", "atComponent", "mechanism"}, path);
  return read_variable_loose(j, path, prefixes);
}

ProcessVariable read_variable_loose(const Json& j, const std::string& path,
                                    const PrefixTable& prefixes) {
  require_object(j, path);
  ProcessVariable v;
  v.stuff = get_iri(j, "stuff", path, prefixes);
  v.quantity_kind = get_iri(j, "quantityKind", path, prefixes);
  v.unit = get_opt_iri(j, "unit", path, prefixes);
  v.position = get_opt_iri(j, "position", path, prefixes);
  v.mechanism = get_opt_iri(j, "mechanism", path, prefixes);
  if (const Json* c = find(j, "atComponent"); c != nullptr && !c->is_null()) {
    if (c->is_string()) {
      v.at_component = c->get<std::string>();
    } else {
      v.component_type = get_opt_typed(j, "atComponent", path, prefixes);
    }
  }
  return v;
}

Json write_variable(const ProcessVariable& v, VariableStyle style) {
  Json j = Json::object();
  if (style == VariableStyle::kDesign && v.at_component) {
    j["atComponent"] = *v.at_component;
  } else if (v.component_type) {
    j["atComponent"] = typed(*v.component_type);
  }
  j["stuff"] = v.stuff.curie();
  j["quantityKind"] = v.quantity_kind.curie();
  if (v.position) j["position"] = v.position->curie();
  if (v.unit) j["unit"] = v.unit->curie();
  if (v.mechanism) j["mechanism"] = v.mechanism->curie();
  return j;
}

DesignSpecification read_specification(const Json& j, const std::string& path,
                                       const PrefixTable& prefixes) {
  require_object(j, path);
  DesignSpecification d;
  const Json* var = find(j, "specifiedVariable");
  if (var == nullptr) throw ParseError(child_path(path, "specifiedVariable"), "missing required key");
  d.specified_variable = read_variable(*var, child_path(path, "specifiedVariable"), prefixes);
  d.min_value = get_opt_number(j, "hasMinValue", path);
  d.max_value = get_opt_number(j, "hasMaxValue", path);
  d.nominal_value = get_opt_number(j, "hasNominalValue", path);
  return d;
}

Json write_specification_values(const DesignSpecification& d, Json j) {
  if (d.min_value) j["hasMinValue"] = *d.min_value;
  if (d.max_value) j["hasMaxValue"] = *d.max_value;
  if (d.nominal_value) j["hasNominalValue"] = *d.nominal_value;
  return j;
}

namespace {

const Json& get_array(const Json& obj, std::string_view key, const std::string& path) {
  static const Json kEmpty = Json::array();
  const Json* v = find(obj, key);
  if (v == nullptr || v->is_null()) return kEmpty;
  if (!v->is_array()) throw ParseError(child_path(path, key), "expected an array");
  return *v;
}

Iri class_at(const Json& obj, std::string_view key, const std::string& path,
             const Taxonomy& taxonomy) {
  Iri iri = get_iri(obj, key, path, taxonomy.prefixes());
  if (!taxonomy.contains(iri)) throw UnknownClassError(iri.curie());
  return iri;
}

std::optional<Iri> opt_class_at(const Json& obj, std::string_view key, const std::string& path,
                                const Taxonomy& taxonomy) {
  auto iri = get_opt_iri(obj, key, path, taxonomy.prefixes());
  if (iri && !taxonomy.contains(*iri)) throw UnknownClassError(iri->curie());
  return iri;
}

void check_variable_refs(const SystemDesign& s, const ProcessVariable& v, const std::string& path) {
  if (v.at_component && s.find_component(*v.at_component) == nullptr)
    throw ReferenceError(path + "/atComponent: component '" + *v.at_component +
                         "' is not declared");
}

}  // namespace

SystemDesign read_design(const Json& j, const std::string& path, const Taxonomy& taxonomy) {
  const PrefixTable& prefixes = taxonomy.prefixes();
  require_object(j, path);
  check_keys(j,
             {"id", "title", "systemClass", "manages", "components", "sensors", "actuators",
              "specifications", "base", "systemModel", "simulationModel"},
             path);
  SystemDesign s;
  s.id = get_string(j, "id", path);
  s.title = get_opt_string(j, "title", path).value_or("");
  s.system_type = class_at(j, "systemClass", path, taxonomy);
  s.base = get_opt_string(j, "base", path);
  s.system_model = get_opt_string(j, "systemModel", path);
  s.simulation_model = get_opt_string(j, "simulationModel", path);

  if (const Json* m = find(j, "manages"); m != nullptr && !m->is_null()) {
    const std::string mpath = child_path(path, "manages");
    require_object(*m, mpath);
    check_keys(*m, {"class", "mechanisms"}, mpath);
    PhysicalProcess p;
    p.type = class_at(*m, "class", mpath, taxonomy);
    const Json& mechs = get_array(*m, "mechanisms", mpath);
    for (std::size_t i = 0; i < mechs.size(); ++i) {
      const std::string here = child_path(child_path(mpath, "mechanisms"), i);
      require_object(mechs[i], here);
      check_keys(mechs[i], {"id", "class"}, here);
      p.mechanisms.push_back({get_string(mechs[i], "id", here),
                              class_at(mechs[i], "class", here, taxonomy)});
    }
    s.manages = std::move(p);
  }

  const Json& comps = get_array(j, "components", path);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string here = child_path(child_path(path, "components"), i);
    require_object(comps[i], here);
    check_keys(comps[i], {"id", "class", "partOf", "managesMechanism", "ports"}, here);
    Component c;
    c.id = get_string(comps[i], "id", here);
    c.type = class_at(comps[i], "class", here, taxonomy);
    c.part_of = get_opt_string(comps[i], "partOf", here);
    c.manages_mechanism = get_opt_string(comps[i], "managesMechanism", here);
    const Json& ports = get_array(comps[i], "ports", here);
    for (std::size_t k = 0; k < ports.size(); ++k) {
      const std::string ppath = child_path(child_path(here, "ports"), k);
      require_object(ports[k], ppath);
      check_keys(ports[k], {"id", "class"}, ppath);
      c.ports.push_back({get_string(ports[k], "id", ppath),
                         class_at(ports[k], "class", ppath, taxonomy), c.id});
    }
    s.components.push_back(std::move(c));
  }

  const Json& sensors = get_array(j, "sensors", path);
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    const std::string here = child_path(child_path(path, "sensors"), i);
    require_object(sensors[i], here);
    check_keys(sensors[i], {"id", "class", "observes"}, here);
    Sensor sensor;
    sensor.id = get_string(sensors[i], "id", here);
    sensor.type = opt_class_at(sensors[i], "class", here, taxonomy);
    if (const Json* o = find(sensors[i], "observes"); o != nullptr && !o->is_null())
      sensor.observes = read_variable(*o, child_path(here, "observes"), prefixes);
    s.sensors.push_back(std::move(sensor));
  }

  const Json& actuators = get_array(j, "actuators", path);
  for (std::size_t i = 0; i < actuators.size(); ++i) {
    const std::string here = child_path(child_path(path, "actuators"), i);
    require_object(actuators[i], here);
    check_keys(actuators[i], {"id", "class", "manipulates", "affects", "relatedMechanism"}, here);
    Actuator a;
    a.id = get_string(actuators[i], "id", here);
    a.type = opt_class_at(actuators[i], "class", here, taxonomy);
    a.related_mechanism = opt_class_at(actuators[i], "relatedMechanism", here, taxonomy);
    if (const Json* m = find(actuators[i], "manipulates"); m != nullptr && !m->is_null())
      a.manipulates = read_variable(*m, child_path(here, "manipulates"), prefixes);
    if (const Json* af = find(actuators[i], "affects"); af != nullptr && !af->is_null()) {
      const std::string apath = child_path(here, "affects");
      if (af->is_array()) {
        for (std::size_t k = 0; k < af->size(); ++k)
          a.affects.push_back(read_variable((*af)[k], child_path(apath, k), prefixes));
      } else {
        a.affects.push_back(read_variable(*af, apath, prefixes));
      }
    }
    s.actuators.push_back(std::move(a));
  }

  const Json& specs = get_array(j, "specifications", path);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const std::string here = child_path(child_path(path, "specifications"), i);
    require_object(specs[i], here);
    check_keys(specs[i], {"id", "specifiedVariable", "hasMinValue", "hasMaxValue", "hasNominalValue"},
               here);
    DesignSpecification d = read_specification(specs[i], here, prefixes);
    d.id = get_string(specs[i], "id", here);
    s.specifications.push_back(std::move(d));
  }

  // Identifiers are unique across every kind of individual in a design.
  std::set<std::string> ids;
  auto claim = [&](const std::string& id, const std::string& where) {
    if (!ids.insert(id).second) throw ParseError(where, "duplicate id '" + id + "'");
  };
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    claim(s.components[i].id, child_path(child_path(path, "components"), i));
    for (const Port& port : s.components[i].ports)
      claim(port.id, child_path(child_path(path, "components"), i) + "/ports");
  }
  for (std::size_t i = 0; i < s.sensors.size(); ++i)
    claim(s.sensors[i].id, child_path(child_path(path, "sensors"), i));
  for (std::size_t i = 0; i < s.actuators.size(); ++i)
    claim(s.actuators[i].id, child_path(child_path(path, "actuators"), i));
  for (std::size_t i = 0; i < s.specifications.size(); ++i)
    claim(s.specifications[i].id, child_path(child_path(path, "specifications"), i));
  if (s.manages) {
    std::set<std::string> mech_ids;
    for (const PhysicalMechanism& m : s.manages->mechanisms)
      if (!mech_ids.insert(m.id).second)
        throw ParseError(child_path(path, "manages"), "duplicate mechanism id '" + m.id + "'");
  }

  for (std::size_t i = 0; i < s.components.size(); ++i) {
    const Component& c = s.components[i];
    const std::string here = child_path(child_path(path, "components"), i);
    if (c.part_of && s.find_component(*c.part_of) == nullptr)
      throw ReferenceError(here + "/partOf: component '" + *c.part_of + "' is not declared");
    if (c.manages_mechanism && s.find_mechanism(*c.manages_mechanism) == nullptr)
      throw ReferenceError(here + "/managesMechanism: mechanism '" + *c.manages_mechanism +
                           "' is not declared");
  }
  for (std::size_t i = 0; i < s.sensors.size(); ++i)
    if (s.sensors[i].observes)
      check_variable_refs(s, *s.sensors[i].observes,
                          child_path(child_path(path, "sensors"), i) + "/observes");
  for (std::size_t i = 0; i < s.actuators.size(); ++i) {
    const std::string here = child_path(child_path(path, "actuators"), i);
    if (s.actuators[i].manipulates)
      check_variable_refs(s, *s.actuators[i].manipulates, here + "/manipulates");
    for (const ProcessVariable& v : s.actuators[i].affects)
      check_variable_refs(s, v, here + "/affects");
  }
  for (std::size_t i = 0; i < s.specifications.size(); ++i)
    check_variable_refs(s, s.specifications[i].specified_variable,
                        child_path(child_path(path, "specifications"), i));

  canonicalize_design(s, taxonomy);
  return s;
}

Json write_design(const SystemDesign& s) {
  Json j = Json::object();
  j["id"] = s.id;
  j["title"] = s.title;
  j["systemClass"] = s.system_type.curie();
  if (s.base) j["base"] = *s.base;
  if (s.system_model) j["systemModel"] = *s.system_model;
  if (s.simulation_model) j["simulationModel"] = *s.simulation_model;
  if (s.manages) {
    Json m = Json::object();
    m["class"] = s.manages->type.curie();
    Json mechs = Json::array();
    for (const PhysicalMechanism& mech : s.manages->mechanisms)
      mechs.push_back(Json{{"id", mech.id}, {"class", mech.type.curie()}});
    m["mechanisms"] = std::move(mechs);
    j["manages"] = std::move(m);
  }
  Json comps = Json::array();
  for (const Component& c : s.components) {
    Json cj = Json::object();
    cj["id"] = c.id;
    cj["class"] = c.type.curie();
    if (c.part_of) cj["partOf"] = *c.part_of;
    if (c.manages_mechanism) cj["managesMechanism"] = *c.manages_mechanism;
    if (!c.ports.empty()) {
      Json ports = Json::array();
      for (const Port& p : c.ports) ports.push_back(Json{{"id", p.id}, {"class", p.type.curie()}});
      cj["ports"] = std::move(ports);
    }
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);

  Json sensors = Json::array();
  for (const Sensor& sensor : s.sensors) {
    Json sj = Json::object();
    sj["id"] = sensor.id;
    if (sensor.type) sj["class"] = sensor.type->curie();
    if (sensor.observes) sj["observes"] = write_variable(*sensor.observes, VariableStyle::kDesign);
    sensors.push_back(std::move(sj));
  }
  j["sensors"] = std::move(sensors);

  Json actuators = Json::array();
  for (const Actuator& a : s.actuators) {
    Json aj = Json::object();
    aj["id"] = a.id;
    if (a.type) aj["class"] = a.type->curie();
    if (a.related_mechanism) aj["relatedMechanism"] = a.related_mechanism->curie();
    if (a.manipulates) aj["manipulates"] = write_variable(*a.manipulates, VariableStyle::kDesign);
    if (!a.affects.empty()) {
      Json af = Json::array();
      for (const ProcessVariable& v : a.affects) af.push_back(write_variable(v, VariableStyle::kDesign));
      aj["affects"] = std::move(af);
    }
    actuators.push_back(std::move(aj));
  }
  j["actuators"] = std::move(actuators);

  Json specs = Json::array();
  for (const DesignSpecification& d : s.specifications) {
    Json dj = Json::object();
    dj["id"] = d.id;
    dj["specifiedVariable"] = write_variable(d.specified_variable, VariableStyle::kDesign);
    specs.push_back(write_specification_values(d, std::move(dj)));
  }
  j["specifications"] = std::move(specs);
  return j;
}

}  // namespace phydit::detail
