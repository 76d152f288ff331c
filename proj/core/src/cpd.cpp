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

#include "phydit/cpd.hpp"

#include <set>

#include "json_io.hpp"
#include "phydit/io.hpp"

namespace phydit {

const Sensor* ControlProgramDesc::find_sensor(std::string_view sensor_id) const {
  for (const SystemDesign& asd : asds)
    if (const Sensor* s = asd.find_sensor(sensor_id)) return s;
  return nullptr;
}

const Actuator* ControlProgramDesc::find_actuator(std::string_view actuator_id) const {
  for (const SystemDesign& asd : asds)
    if (const Actuator* a = asd.find_actuator(actuator_id)) return a;
  return nullptr;
}

namespace {

using detail::child_path;
using detail::Json;

const Json& array_at(const Json& obj, std::string_view key, const std::string& path) {
  static const Json kEmpty = Json::array();
  const Json* v = detail::find(obj, key);
  if (v == nullptr || v->is_null()) return kEmpty;
  if (!v->is_array()) throw ParseError(child_path(path, key), "expected an array");
  return *v;
}

template <typename Io>
std::vector<Io> read_ios(const Json& j, std::string_view key) {
  std::vector<Io> out;
  const Json& items = array_at(j, key, "");
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string here = child_path(child_path("", key), i);
    detail::require_object(items[i], here);
    detail::check_keys(items[i], {"id", "intendedFor"}, here);
    out.push_back({detail::get_string(items[i], "id", here),
                   detail::get_string(items[i], "intendedFor", here)});
  }
  return out;
}

}  // namespace

ControlProgramDesc parse_cpd(std::string_view json, const Taxonomy& taxonomy) {
  const Json j = detail::parse_json(json);
  detail::require_object(j, "");
  detail::check_keys(j, {"id", "title", "asd", "inputs", "outputs", "parameters"}, "");
  ControlProgramDesc cpd;
  cpd.id = detail::get_string(j, "id", "");
  cpd.title = detail::get_opt_string(j, "title", "").value_or("");

  const Json* asd = detail::find(j, "asd");
  if (asd == nullptr || asd->is_null()) throw ParseError("/asd", "missing required key");
  if (asd->is_array()) {
    if (asd->empty()) throw ParseError("/asd", "at least one abstract system design is required");
    for (std::size_t i = 0; i < asd->size(); ++i)
      cpd.asds.push_back(detail::read_design((*asd)[i], child_path("/asd", i), taxonomy));
  } else {
    cpd.asds.push_back(detail::read_design(*asd, "/asd", taxonomy));
  }

  std::set<std::string> ids;
  for (const SystemDesign& d : cpd.asds) {
    for (const Sensor& s : d.sensors)
      if (!ids.insert(s.id).second) throw ParseError("/asd", "sensor id '" + s.id + "' is not unique across ASDs");
    for (const Actuator& a : d.actuators)
      if (!ids.insert(a.id).second) throw ParseError("/asd", "actuator id '" + a.id + "' is not unique across ASDs");
  }

  cpd.inputs = read_ios<CpInput>(j, "inputs");
  cpd.outputs = read_ios<CpOutput>(j, "outputs");
  for (std::size_t i = 0; i < cpd.inputs.size(); ++i)
    if (cpd.find_sensor(cpd.inputs[i].intended_for) == nullptr)
      throw ReferenceError("/inputs/" + std::to_string(i) + "/intendedFor: sensor '" +
                           cpd.inputs[i].intended_for + "' is not part of the ASD");
  for (std::size_t i = 0; i < cpd.outputs.size(); ++i)
    if (cpd.find_actuator(cpd.outputs[i].intended_for) == nullptr)
      throw ReferenceError("/outputs/" + std::to_string(i) + "/intendedFor: actuator '" +
                           cpd.outputs[i].intended_for + "' is not part of the ASD");

  const Json& params = array_at(j, "parameters", "");
  for (std::size_t i = 0; i < params.size(); ++i) {
    const std::string here = child_path("/parameters", i);
    detail::require_object(params[i], here);
    detail::check_keys(params[i], {"id", "specifiedBy"}, here);
    CpParameter p;
    p.id = detail::get_string(params[i], "id", here);
    const Json* spec = detail::find(params[i], "specifiedBy");
    if (spec == nullptr) throw ParseError(here + "/specifiedBy", "missing required key");
    detail::require_object(*spec, here + "/specifiedBy");
    detail::check_keys(*spec, {"id", "specifiedVariable", "hasMinValue", "hasMaxValue", "hasNominalValue"},
                       here + "/specifiedBy");
    p.specified_by = detail::read_specification(*spec, here + "/specifiedBy", taxonomy.prefixes());
    p.specified_by.id = detail::get_opt_string(*spec, "id", here + "/specifiedBy").value_or(p.id);
    // Parameter variables may point into the (first) ASD for inference.
    p.specified_by.specified_variable = canonicalize_variable(
        p.specified_by.specified_variable, taxonomy, &cpd.asds.front());
    cpd.parameters.push_back(std::move(p));
  }
  return cpd;
}

std::string serialize_cpd(const ControlProgramDesc& cpd) {
  Json j = Json::object();
  j["id"] = cpd.id;
  j["title"] = cpd.title;
  if (cpd.asds.size() == 1) {
    j["asd"] = detail::write_design(cpd.asds.front());
  } else {
    Json arr = Json::array();
    for (const SystemDesign& d : cpd.asds) arr.push_back(detail::write_design(d));
    j["asd"] = std::move(arr);
  }
  auto ios = [](const auto& items) {
    Json arr = Json::array();
    for (const auto& io : items) arr.push_back(Json{{"id", io.id}, {"intendedFor", io.intended_for}});
    return arr;
  };
  j["inputs"] = ios(cpd.inputs);
  j["outputs"] = ios(cpd.outputs);
  Json params = Json::array();
  for (const CpParameter& p : cpd.parameters) {
    Json spec = Json::object();
    spec["id"] = p.specified_by.id;
    spec["specifiedVariable"] =
        detail::write_variable(p.specified_by.specified_variable, detail::VariableStyle::kDesign);
    params.push_back(Json{{"id", p.id}, {"specifiedBy", detail::write_specification_values(p.specified_by, spec)}});
  }
  j["parameters"] = std::move(params);
  return detail::dump_json(j);
}

Diagnostics validate_cpd(const ControlProgramDesc& cpd, const Taxonomy& taxonomy) {
  Diagnostics out;
  if (cpd.asds.empty()) out.push_back({Severity::kError, "/asd", "no abstract system design"});
  for (std::size_t i = 0; i < cpd.asds.size(); ++i) {
    const std::string path = cpd.asds.size() == 1 ? "/asd" : "/asd/" + std::to_string(i);
    auto d = detail::validate_design(cpd.asds[i], taxonomy, ValidationMode::kRelaxed, path);
    out.insert(out.end(), d.begin(), d.end());
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < cpd.inputs.size(); ++i) {
    const std::string here = "/inputs/" + std::to_string(i);
    if (!ids.insert(cpd.inputs[i].id).second)
      out.push_back({Severity::kError, here + "/id", "duplicate IO id '" + cpd.inputs[i].id + "'"});
    if (cpd.find_sensor(cpd.inputs[i].intended_for) == nullptr)
      out.push_back({Severity::kError, here + "/intendedFor",
                     "sensor '" + cpd.inputs[i].intended_for + "' is not part of the ASD"});
  }
  for (std::size_t i = 0; i < cpd.outputs.size(); ++i) {
    const std::string here = "/outputs/" + std::to_string(i);
    if (!ids.insert(cpd.outputs[i].id).second)
      out.push_back({Severity::kError, here + "/id", "duplicate IO id '" + cpd.outputs[i].id + "'"});
    if (cpd.find_actuator(cpd.outputs[i].intended_for) == nullptr)
      out.push_back({Severity::kError, here + "/intendedFor",
                     "actuator '" + cpd.outputs[i].intended_for + "' is not part of the ASD"});
  }
  for (std::size_t i = 0; i < cpd.parameters.size(); ++i) {
    const std::string here = "/parameters/" + std::to_string(i) + "/specifiedBy/specifiedVariable";
    try {
      canonicalize_variable(cpd.parameters[i].specified_by.specified_variable, taxonomy,
                            cpd.asds.empty() ? nullptr : &cpd.asds.front());
    } catch (const Error& e) {
      out.push_back({Severity::kError, here, e.what()});
    }
  }
  return out;
}

std::vector<ControlProgramDesc> load_cpd_library(const std::filesystem::path& dir,
                                                 const Taxonomy& taxonomy) {
  std::vector<ControlProgramDesc> out;
  std::set<std::string> ids;
  for (const auto& path : list_json_files(dir)) {
    try {
      out.push_back(parse_cpd(read_text_file(path), taxonomy));
    } catch (const Error& e) {
      throw Error(path.string() + ": " + e.what());
    }
    if (!ids.insert(out.back().id).second)
      throw Error(path.string() + ": duplicate CPD id '" + out.back().id + "'");
  }
  return out;
}

}  // namespace phydit
