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

#include "phydit/td.hpp"

#include <set>

#include "json_io.hpp"
#include "phydit/sdd.hpp"

namespace phydit {
namespace {

using detail::child_path;
using detail::Json;

struct AspectInfo {
  MetadataAspect aspect;
  std::string_view tag;
  std::string_view label;
};

constexpr AspectInfo kAspects[] = {
    {MetadataAspect::kSystemType, "system-type", "General: System type"},
    {MetadataAspect::kProcessType, "process-type", "General: Physical process type"},
    {MetadataAspect::kSensorType, "sensor-type", "Property: Sensor type"},
    {MetadataAspect::kObservedVariable, "observed-variable", "Property: Observed variable"},
    {MetadataAspect::kPropertyComponentPosition, "property-component-position",
     "Property: Component and position"},
    {MetadataAspect::kActuatorType, "actuator-type", "Action: Actuator type"},
    {MetadataAspect::kManipulatedVariable, "manipulated-variable", "Action: Manipulated variable"},
    {MetadataAspect::kAffectedVariable, "affected-variable", "Action: Affected variable"},
    {MetadataAspect::kActionComponentPosition, "action-component-position",
     "Action: Component and position"},
    {MetadataAspect::kDesignParameters, "design-parameters", "General: Design parameters"},
};

const AspectInfo& info(MetadataAspect aspect) {
  for (const AspectInfo& a : kAspects)
    if (a.aspect == aspect) return a;
  throw Error("unknown metadata aspect");
}

// TD variables carry the component as a class only.
ProcessVariable thing_variable(ProcessVariable v) {
  v.at_component.reset();
  v.mechanism.reset();
  return v;
}

Json forms(const std::optional<std::string>& href) {
  Json arr = Json::array();
  if (href) arr.push_back(Json{{"href", *href}});
  return arr;
}

std::optional<std::string> read_form(const Json& affordance, const std::string& path) {
  const Json* f = detail::find(affordance, "forms");
  if (f == nullptr || f->is_null()) return std::nullopt;
  if (!f->is_array()) throw ParseError(child_path(path, "forms"), "expected an array");
  for (std::size_t i = 0; i < f->size(); ++i) {
    const std::string here = child_path(child_path(path, "forms"), i);
    detail::require_object((*f)[i], here);
    if (auto href = detail::get_opt_string((*f)[i], "href", here)) return href;
  }
  return std::nullopt;
}

const Json& map_at(const Json& j, std::string_view key) {
  static const Json kEmpty = Json::object();
  const Json* v = detail::find(j, key);
  if (v == nullptr || v->is_null()) return kEmpty;
  if (!v->is_object()) throw ParseError(child_path("", key), "expected an object");
  return *v;
}

std::optional<ProcessVariable> opt_variable(const Json& obj, std::string_view key,
                                            const std::string& path, const PrefixTable& prefixes) {
  const Json* v = detail::find(obj, key);
  if (v == nullptr || v->is_null()) return std::nullopt;
  return detail::read_variable_loose(*v, child_path(path, key), prefixes);
}

}  // namespace

std::string_view aspect_tag(MetadataAspect aspect) { return info(aspect).tag; }

std::string_view aspect_label(MetadataAspect aspect) { return info(aspect).label; }

MetadataAspect parse_aspect(std::string_view tag) {
  for (const AspectInfo& a : kAspects)
    if (a.tag == tag) return a.aspect;
  throw Error("unknown metadata aspect '" + std::string(tag) + "'");
}

ThingDescription synthesize_td(const SystemDesign& design, const Taxonomy& taxonomy) {
  for (const Diagnostic& d : validate_sdd(design, taxonomy))
    if (d.severity == Severity::kError)
      throw Error("design '" + design.id + "' does not validate: " + d.path + ": " + d.message);

  ThingDescription td;
  td.id = design.id;
  td.title = design.title;
  td.thing_class = design.system_type;
  if (design.manages) td.manages_class = design.manages->type;
  td.base_url = design.base;
  td.system_model_url = design.system_model.value_or("/model/sdd");
  td.simulation_model_url = design.simulation_model;

  for (const DesignSpecification& spec : design.specifications) {
    DesignSpecification copy = spec;
    copy.specified_variable =
        thing_variable(canonicalize_variable(spec.specified_variable, taxonomy, &design));
    td.specifications.push_back(std::move(copy));
  }

  for (const Sensor& s : design.sensors) {
    PropertyAffordance p;
    p.name = s.id;
    p.sensor_class = s.type;
    if (s.observes) p.observes = thing_variable(canonicalize_variable(*s.observes, taxonomy, &design));
    p.form_href = "/sensors/" + s.id;
    td.properties.push_back(std::move(p));
  }

  for (const Actuator& a : design.actuators) {
    ActionAffordance act;
    act.name = a.id + "-actuation";
    act.actuator_class = a.type;
    if (a.manipulates) {
      const ProcessVariable m = canonicalize_variable(*a.manipulates, taxonomy, &design);
      act.mechanism_class = m.mechanism ? m.mechanism : a.related_mechanism;
      act.component_class = m.component_type;
      act.manipulates = thing_variable(m);
    } else {
      act.mechanism_class = a.related_mechanism;
    }
    for (const ProcessVariable& v : a.affects)
      act.affects.push_back(thing_variable(canonicalize_variable(v, taxonomy, &design)));
    act.form_href = "/actuators/" + a.id;
    td.actions.push_back(std::move(act));
  }
  return td;
}

std::string serialize_td(const ThingDescription& td) {
  using detail::typed;
  using detail::VariableStyle;
  using detail::write_variable;

  Json j = Json::object();
  j["@context"] = std::string(kTdContext);
  j["@id"] = td.id;
  j["title"] = td.title;
  if (td.thing_class) j["@type"] = td.thing_class->curie();
  if (td.base_url) j["base"] = *td.base_url;
  if (td.manages_class) j["manages"] = typed(*td.manages_class);
  if (td.system_model_url) j["systemModel"] = *td.system_model_url;
  if (td.simulation_model_url) j["simulationModel"] = *td.simulation_model_url;

  Json specs = Json::object();
  for (const DesignSpecification& d : td.specifications) {
    Json dj = Json::object();
    dj["specifiedVariable"] = write_variable(d.specified_variable, VariableStyle::kThing);
    specs[d.id] = detail::write_specification_values(d, std::move(dj));
  }
  j["specification"] = std::move(specs);

  Json props = Json::object();
  for (const PropertyAffordance& p : td.properties) {
    Json pj = Json::object();
    if (p.title) pj["title"] = *p.title;
    if (p.sensor_class) pj["sensor"] = typed(*p.sensor_class);
    if (p.observes) pj["observes"] = write_variable(*p.observes, VariableStyle::kThing);
    pj["readOnly"] = true;
    pj["forms"] = forms(p.form_href);
    props[p.name] = std::move(pj);
  }
  j["properties"] = std::move(props);

  Json actions = Json::object();
  for (const ActionAffordance& a : td.actions) {
    Json aj = Json::object();
    if (a.title) aj["title"] = *a.title;
    if (a.actuator_class) aj["actuator"] = typed(*a.actuator_class);
    if (a.mechanism_class) aj["mechanism"] = typed(*a.mechanism_class);
    if (a.component_class) aj["component"] = typed(*a.component_class);
    if (a.manipulates) aj["manipulates"] = write_variable(*a.manipulates, VariableStyle::kThing);
    Json affects = Json::array();
    for (const ProcessVariable& v : a.affects) affects.push_back(write_variable(v, VariableStyle::kThing));
    aj["affects"] = std::move(affects);
    aj["forms"] = forms(a.form_href);
    actions[a.name] = std::move(aj);
  }
  j["actions"] = std::move(actions);

  Json events = Json::object();
  for (const EventAffordance& e : td.events) {
    Json ej = Json::object();
    if (e.title) ej["title"] = *e.title;
    ej["forms"] = forms(e.form_href);
    events[e.name] = std::move(ej);
  }
  j["events"] = std::move(events);
  return detail::dump_json(j);
}

ThingDescription parse_td(std::string_view json, const Taxonomy& taxonomy) {
  const PrefixTable& prefixes = taxonomy.prefixes();
  const Json j = detail::parse_json(json);
  detail::require_object(j, "");

  ThingDescription td;
  td.id = detail::get_opt_string(j, "@id", "").value_or(detail::get_opt_string(j, "id", "").value_or(""));
  td.title = detail::get_opt_string(j, "title", "").value_or("");
  const Json* type = detail::find(j, "@type");
  if (type == nullptr || type->is_null()) throw ParseError("/@type", "missing required key");
  // Plain WoT TDs may list several types; the first registered one is the system class.
  if (type->is_array()) {
    std::optional<Iri> first;
    for (std::size_t i = 0; i < type->size() && !td.thing_class; ++i) {
      const Json& item = (*type)[i];
      if (item.is_string() && item.get<std::string>().find(':') == std::string::npos) continue;
      Iri iri = detail::to_iri(item, child_path("/@type", i), prefixes);
      if (taxonomy.contains(iri)) td.thing_class = iri;
      if (!first) first = iri;
    }
    if (!td.thing_class) td.thing_class = first;
  } else if (type->is_string() && type->get<std::string>().find(':') == std::string::npos) {
    // "Thing" and similar unprefixed WoT terms carry no system class.
  } else {
    td.thing_class = detail::to_iri(*type, "/@type", prefixes);
  }
  td.base_url = detail::get_opt_string(j, "base", "");
  td.manages_class = detail::get_opt_typed(j, "manages", "", prefixes);
  td.system_model_url = detail::get_opt_string(j, "systemModel", "");
  td.simulation_model_url = detail::get_opt_string(j, "simulationModel", "");

  const Json& specs = map_at(j, "specification");
  for (auto it = specs.begin(); it != specs.end(); ++it) {
    const std::string here = child_path("/specification", it.key());
    DesignSpecification d = detail::read_specification(*it, here, prefixes);
    d.id = it.key();
    td.specifications.push_back(std::move(d));
  }

  const Json& props = map_at(j, "properties");
  for (auto it = props.begin(); it != props.end(); ++it) {
    const std::string here = child_path("/properties", it.key());
    detail::require_object(*it, here);
    PropertyAffordance p;
    p.name = it.key();
    p.title = detail::get_opt_string(*it, "title", here);
    p.sensor_class = detail::get_opt_typed(*it, "sensor", here, prefixes);
    p.observes = opt_variable(*it, "observes", here, prefixes);
    p.form_href = read_form(*it, here);
    td.properties.push_back(std::move(p));
  }

  const Json& actions = map_at(j, "actions");
  for (auto it = actions.begin(); it != actions.end(); ++it) {
    const std::string here = child_path("/actions", it.key());
    detail::require_object(*it, here);
    ActionAffordance a;
    a.name = it.key();
    a.title = detail::get_opt_string(*it, "title", here);
    a.actuator_class = detail::get_opt_typed(*it, "actuator", here, prefixes);
    a.mechanism_class = detail::get_opt_typed(*it, "mechanism", here, prefixes);
    if (!a.mechanism_class) a.mechanism_class = detail::get_opt_typed(*it, "relatedTo", here, prefixes);
    a.component_class = detail::get_opt_typed(*it, "component", here, prefixes);
    a.manipulates = opt_variable(*it, "manipulates", here, prefixes);
    if (const Json* af = detail::find(*it, "affects"); af != nullptr && !af->is_null()) {
      const std::string apath = child_path(here, "affects");
      if (af->is_array()) {
        for (std::size_t k = 0; k < af->size(); ++k)
          a.affects.push_back(detail::read_variable_loose((*af)[k], child_path(apath, k), prefixes));
      } else {
        a.affects.push_back(detail::read_variable_loose(*af, apath, prefixes));
      }
    }
    a.form_href = read_form(*it, here);
    td.actions.push_back(std::move(a));
  }

  const Json& events = map_at(j, "events");
  for (auto it = events.begin(); it != events.end(); ++it) {
    const std::string here = child_path("/events", it.key());
    detail::require_object(*it, here);
    td.events.push_back({it.key(), detail::get_opt_string(*it, "title", here), read_form(*it, here)});
  }
  return td;
}

ThingDescription ablate_td(ThingDescription td, MetadataAspect aspect) {
  auto strip_place = [](ProcessVariable& v) {
    v.position.reset();
    v.component_type.reset();
  };
  switch (aspect) {
    case MetadataAspect::kSystemType:
      td.thing_class.reset();
      break;
    case MetadataAspect::kProcessType:
      td.manages_class.reset();
      break;
    case MetadataAspect::kSensorType:
      for (PropertyAffordance& p : td.properties) p.sensor_class.reset();
      break;
    case MetadataAspect::kObservedVariable:
      for (PropertyAffordance& p : td.properties) p.observes.reset();
      break;
    case MetadataAspect::kPropertyComponentPosition:
      for (PropertyAffordance& p : td.properties)
        if (p.observes) strip_place(*p.observes);
      break;
    case MetadataAspect::kActuatorType:
      for (ActionAffordance& a : td.actions) a.actuator_class.reset();
      break;
    case MetadataAspect::kManipulatedVariable:
      for (ActionAffordance& a : td.actions) a.manipulates.reset();
      break;
    case MetadataAspect::kAffectedVariable:
      for (ActionAffordance& a : td.actions) a.affects.clear();
      break;
    case MetadataAspect::kActionComponentPosition:
      for (ActionAffordance& a : td.actions) {
        a.component_class.reset();
        if (a.manipulates) strip_place(*a.manipulates);
        for (ProcessVariable& v : a.affects) strip_place(v);
      }
      break;
    case MetadataAspect::kDesignParameters:
      td.specifications.clear();
      break;
  }
  return td;
}

Diagnostics validate_td(const ThingDescription& td, const Taxonomy& taxonomy) {
  Diagnostics out;
  auto error = [&](std::string path, std::string message) {
    out.push_back({Severity::kError, std::move(path), std::move(message)});
  };
  auto known = [&](const Iri& iri, const std::string& path) {
    if (!taxonomy.contains(iri)) error(path, "class " + iri.curie() + " is not in the taxonomy");
  };
  auto variable = [&](const ProcessVariable& v, const std::string& path) {
    try {
      canonicalize_variable(v, taxonomy);
    } catch (const Error& e) {
      error(path, e.what());
    }
  };
  auto unique = [&](std::set<std::string>& seen, const std::string& name, const std::string& path) {
    if (!seen.insert(name).second) error(path, "duplicate affordance name '" + name + "'");
  };

  if (td.id.empty()) error("/@id", "TD has no id");
  if (td.thing_class) known(*td.thing_class, "/@type");
  else error("/@type", "TD has no system class");
  if (td.manages_class) known(*td.manages_class, "/manages");

  std::set<std::string> spec_names;
  for (const DesignSpecification& d : td.specifications) {
    const std::string here = child_path("/specification", d.id);
    unique(spec_names, d.id, here);
    variable(d.specified_variable, here + "/specifiedVariable");
  }
  std::set<std::string> prop_names;
  for (const PropertyAffordance& p : td.properties) {
    const std::string here = child_path("/properties", p.name);
    unique(prop_names, p.name, here);
    if (p.sensor_class) known(*p.sensor_class, here + "/sensor");
    if (p.observes) variable(*p.observes, here + "/observes");
  }
  std::set<std::string> action_names;
  for (const ActionAffordance& a : td.actions) {
    const std::string here = child_path("/actions", a.name);
    unique(action_names, a.name, here);
    if (a.actuator_class) known(*a.actuator_class, here + "/actuator");
    if (a.mechanism_class) known(*a.mechanism_class, here + "/mechanism");
    if (a.component_class) known(*a.component_class, here + "/component");
    if (a.manipulates) variable(*a.manipulates, here + "/manipulates");
    for (std::size_t k = 0; k < a.affects.size(); ++k)
      variable(a.affects[k], child_path(here + "/affects", k));
  }
  std::set<std::string> event_names;
  for (const EventAffordance& e : td.events) unique(event_names, e.name, child_path("/events", e.name));
  return out;
}

}  // namespace phydit
