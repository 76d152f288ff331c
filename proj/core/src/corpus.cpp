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

#include "phydit/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "json_io.hpp"
#include "phydit/fleet.hpp"
#include "phydit/io.hpp"
#include "phydit/sdd.hpp"

namespace phydit {
namespace {

using detail::Json;

// std::uniform_int_distribution is implementation-defined; the raw engine is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(int percent) { return below(100) < static_cast<std::size_t>(percent); }
  template <typename T>
  const T& pick(const std::vector<T>& items) { return items[below(items.size())]; }
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Building blocks shared by system designs and abstract designs.

struct ComponentSpec {
  std::string id;
  std::vector<std::string> variants;  // classes used in concrete designs
  std::string abstract_class;         // class used in CPD designs
  std::string mechanism_id;
  std::string mechanism_class;
};

const std::vector<ComponentSpec>& component_specs() {
  static const std::vector<ComponentSpec> specs = {
      {"supply-fan", {"hvac:SupplyFan", "hvac:PlugFan", "hvac:AxialSupplyFan"}, "hvac:SupplyFan",
       "air-movement", "hvac:AirMovement"},
      {"return-fan", {"hvac:ReturnFan"}, "hvac:ReturnFan", "", ""},
      {"oa-damper", {"hvac:OutdoorAirDamper"}, "hvac:Damper", "", ""},
      {"mixing-box", {"hvac:MixingBox"}, "hvac:MixingBox", "mixing", "hvac:AirMixing"},
      {"supply-duct", {"hvac:SupplyDuct"}, "hvac:SupplyDuct", "", ""},
      {"return-duct", {"hvac:ReturnDuct"}, "hvac:ReturnDuct", "", ""},
      {"filter", {"hvac:Filter"}, "hvac:Filter", "", ""},
      {"heating-coil", {"hvac:HeatingCoil", "hvac:HotWaterHeatingCoil"}, "hvac:HeatingCoil", "heating",
       "hvac:Heating"},
      {"preheat-coil", {"hvac:PreheatCoil"}, "hvac:PreheatCoil", "preheating", "hvac:Preheating"},
      {"cooling-coil", {"hvac:CoolingCoil", "hvac:ChilledWaterCoolingCoil"}, "hvac:CoolingCoil",
       "cooling", "hvac:Cooling"},
      {"humidifier", {"hvac:Humidifier", "hvac:SteamHumidifier"}, "hvac:Humidifier", "humidification",
       "hvac:Humidification"},
      {"heat-wheel", {"hvac:HeatRecoveryWheel"}, "hvac:HeatRecoveryWheel", "heat-recovery",
       "hvac:HeatRecovery"},
  };
  return specs;
}

const ComponentSpec& component_spec(const std::string& id) {
  for (const ComponentSpec& c : component_specs())
    if (c.id == id) return c;
  throw Error("no component spec '" + id + "'");
}

struct VarSpec {
  std::string stuff;
  std::string quantity_kind;
  std::string position;   // "" when unstated
  std::string component;  // component id, "" when unstated
  std::string mechanism;  // "" when unstated
};

struct ActuatorRole {
  std::string key;
  std::string id;
  std::string actuator_class;
  VarSpec manipulates;
  std::vector<VarSpec> affects;
  std::vector<std::string> components;
};

const std::vector<ActuatorRole>& actuator_roles() {
  static const std::vector<ActuatorRole> roles = {
      {"SF", "supply-fan-vfd", "brick:VariableFrequencyDrive",
       {"brick:Air", "qudt:VolumeFlowRate", "elem:outlet", "supply-fan", "hvac:AirMovement"},
       {{"brick:Air", "qudt:Pressure", "elem:inside", "supply-duct", ""}},
       {"supply-fan", "supply-duct"}},
      {"RF", "return-fan-vfd", "brick:VariableFrequencyDrive",
       {"brick:Air", "qudt:VolumeFlowRate", "elem:inlet", "return-fan", "hvac:AirMovement"},
       {{"brick:Air", "qudt:Pressure", "elem:inside", "return-duct", ""}},
       {"return-fan", "return-duct"}},
      {"OAD", "oa-damper-actuator", "brick:DamperActuator",
       {"brick:Air", "qudt:VolumeFlowRate", "elem:inlet", "oa-damper", "hvac:AirMixing"},
       {{"brick:Air", "qudt:Temperature", "elem:outlet", "", "hvac:AirMixing"}},
       {"oa-damper", "mixing-box"}},
      {"HCV", "heating-valve", "brick:ValveActuator",
       {"brick:HotWater", "qudt:VolumeFlowRate", "elem:inlet", "", "hvac:Heating"},
       {{"brick:Air", "qudt:Temperature", "elem:outlet", "", "hvac:Heating"}},
       {"heating-coil"}},
      {"PHV", "preheat-valve", "brick:ValveActuator",
       {"brick:HotWater", "qudt:VolumeFlowRate", "elem:inlet", "", "hvac:Preheating"},
       {{"brick:Air", "qudt:Temperature", "elem:outlet", "", "hvac:Preheating"}},
       {"preheat-coil"}},
      {"CCV", "cooling-valve", "brick:ValveActuator",
       {"brick:ChilledWater", "qudt:VolumeFlowRate", "elem:inlet", "", "hvac:Cooling"},
       {{"brick:Air", "qudt:Temperature", "elem:outlet", "", "hvac:Cooling"}},
       {"cooling-coil"}},
      {"HUM", "humidifier-actuator", "hvac:HumidifierActuator",
       {"brick:Steam", "qudt:VolumeFlowRate", "elem:inlet", "", "hvac:Humidification"},
       {{"brick:Air", "qudt:RelativeHumidity", "elem:outlet", "", "hvac:Humidification"}},
       {"humidifier"}},
      {"HRW", "heat-wheel-drive", "hvac:RotaryWheelDrive",
       {"elem:Heat", "qudt:HeatFlowRate", "elem:inside", "", "hvac:HeatRecovery"},
       {{"brick:Air", "qudt:Temperature", "elem:outlet", "", "hvac:HeatRecovery"}},
       {"heat-wheel"}},
  };
  return roles;
}

const ActuatorRole& actuator_role(const std::string& key) {
  for (const ActuatorRole& r : actuator_roles())
    if (r.key == key) return r;
  throw Error("no actuator role '" + key + "'");
}

struct SensorRole {
  std::string key;
  std::string id;
  std::vector<std::string> classes;  // most specific first, then generalizations
  VarSpec observes;
  std::vector<std::string> components;
};

const std::vector<SensorRole>& sensor_roles() {
  static const std::vector<SensorRole> roles = {
      {"SAT", "supply-air-temp",
       {"brick:SupplyAirTemperatureSensor", "brick:AirTemperatureSensor", "brick:TemperatureSensor"},
       {"brick:Air", "qudt:Temperature", "elem:inside", "supply-duct", ""},
       {"supply-duct"}},
      {"OAT", "outside-air-temp",
       {"brick:OutsideAirTemperatureSensor", "brick:AirTemperatureSensor"},
       {"brick:Air", "qudt:Temperature", "elem:inlet", "oa-damper", ""},
       {"oa-damper"}},
      {"RAT", "return-air-temp",
       {"brick:ReturnAirTemperatureSensor", "brick:AirTemperatureSensor"},
       {"brick:Air", "qudt:Temperature", "elem:inside", "return-duct", ""},
       {"return-duct"}},
      {"MAT", "mixed-air-temp", {"brick:MixedAirTemperatureSensor"},
       {"brick:Air", "qudt:Temperature", "elem:outlet", "mixing-box", ""},
       {"mixing-box"}},
      {"ZAT", "zone-air-temp", {"brick:ZoneAirTemperatureSensor"},
       {"brick:Air", "qudt:Temperature", "", "", ""},
       {}},
      {"SAH", "supply-air-humidity", {"brick:SupplyAirHumiditySensor", "brick:HumiditySensor"},
       {"brick:Air", "qudt:RelativeHumidity", "elem:inside", "supply-duct", ""},
       {"supply-duct"}},
      {"OAF", "outside-air-flow", {"brick:OutsideAirFlowSensor", "brick:AirFlowSensor"},
       {"brick:Air", "qudt:VolumeFlowRate", "elem:inlet", "oa-damper", ""},
       {"oa-damper"}},
      {"SAP", "supply-air-pressure", {"brick:SupplyAirStaticPressureSensor", "brick:StaticPressureSensor"},
       {"brick:Air", "qudt:Pressure", "elem:inside", "supply-duct", ""},
       {"supply-duct"}},
      {"FLT", "filter-dp", {"brick:FilterDifferentialPressureSensor"},
       {"brick:Air", "qudt:PressureDifference", "elem:inside", "filter", ""},
       {"filter"}},
      {"HWT", "hot-water-temp", {"brick:WaterTemperatureSensor"},
       {"brick:HotWater", "qudt:Temperature", "elem:outlet", "heating-coil", ""},
       {"heating-coil"}},
  };
  return roles;
}

const SensorRole& sensor_role(const std::string& key) {
  for (const SensorRole& r : sensor_roles())
    if (r.key == key) return r;
  throw Error("no sensor role '" + key + "'");
}

// Incrementally assembles a SystemDesign.
class DesignBuilder {
 public:
  DesignBuilder(const Taxonomy& t, std::string id, std::string title, const std::string& system_class)
      : t_(t) {
    d_.id = std::move(id);
    d_.title = std::move(title);
    d_.system_type = iri(system_class);
  }

  Iri iri(const std::string& curie) const { return t_.resolve(curie); }

  void process(const std::string& cls) { d_.manages = PhysicalProcess{iri(cls), {}}; }

  // Adds the component (and the mechanism it manages) once.
  void component(const std::string& id, const std::string& cls) {
    if (d_.find_component(id) != nullptr) return;
    const ComponentSpec& spec = component_spec(id);
    Component c;
    c.id = id;
    c.type = iri(cls);
    if (!spec.mechanism_id.empty()) {
      if (!d_.manages) process("hvac:AirTreatment");
      d_.manages->mechanisms.push_back({spec.mechanism_id, iri(spec.mechanism_class)});
      c.manages_mechanism = spec.mechanism_id;
    }
    if (ports_) {
      c.ports.push_back({id + "-in", iri("s223:InletConnectionPoint"), id});
      c.ports.push_back({id + "-out", iri("s223:OutletConnectionPoint"), id});
    }
    d_.components.push_back(std::move(c));
  }

  void with_ports(bool on) { ports_ = on; }

  ProcessVariable variable(const VarSpec& v, const std::string& unit = "") const {
    ProcessVariable out;
    out.stuff = iri(v.stuff);
    out.quantity_kind = iri(v.quantity_kind);
    if (!v.position.empty()) out.position = iri(v.position);
    if (!v.component.empty()) out.at_component = v.component;
    if (!v.mechanism.empty()) out.mechanism = iri(v.mechanism);
    if (!unit.empty()) out.unit = iri(unit);
    return out;
  }

  void sensor(Sensor s) { d_.sensors.push_back(std::move(s)); }
  void actuator(Actuator a) { d_.actuators.push_back(std::move(a)); }
  void specification(DesignSpecification s) { d_.specifications.push_back(std::move(s)); }

  SystemDesign finish() {
    canonicalize_design(d_, t_);
    return std::move(d_);
  }

 private:
  const Taxonomy& t_;
  SystemDesign d_;
  bool ports_ = false;
};

// ---------------------------------------------------------------------------
// Concrete AHUs.

enum class Kind { kA1, kB1, kB2, kC1, kC2, kC3, kC4, kMulti, kD1, kNone };

struct KindInfo {
  Kind kind;
  std::vector<std::string> actuators;
  std::vector<std::string> sensors;  // always present
  std::vector<std::string> extras;   // optional, chosen per unit
  std::vector<std::string> deployed_and_expected;  // first = deployed
  std::vector<std::string> expected;
  const char* group;
};

const std::vector<KindInfo>& kinds() {
  static const std::vector<KindInfo> infos = {
      {Kind::kA1, {"SF", "OAD", "HCV"}, {"SAT", "OAT"}, {"MAT", "SAP", "FLT", "ZAT", "HWT"},
       {"CP-AHU-1"}, {"CP-AHU-1"}, "A"},
      {Kind::kB1, {"SF", "RF", "OAD", "HCV", "CCV"}, {"SAT", "RAT", "OAT"}, {"MAT", "SAP", "FLT", "ZAT", "HWT"},
       {"CP-AHU-2"}, {"CP-AHU-2"}, "B"},
      {Kind::kB2, {"SF", "OAD", "HCV", "HUM"}, {"SAT", "SAH", "OAT"}, {"MAT", "SAP", "FLT", "HWT"},
       {"CP-AHU-3"}, {"CP-AHU-3"}, "B"},
      {Kind::kC1, {"SF", "OAD", "HCV", "CCV"}, {"SAT", "OAT"}, {"MAT", "ZAT", "SAP", "FLT", "HWT", "SAH"},
       {"CP-AHU-4"}, {"CP-AHU-4"}, "C"},
      {Kind::kC2, {"SF", "OAD", "PHV", "HCV"}, {"SAT", "OAT"}, {"MAT", "ZAT", "SAP", "FLT", "HWT", "SAH"},
       {"CP-AHU-5"}, {"CP-AHU-5"}, "C"},
      // No third air temperature, or CP-AHU-7 would match too.
      {Kind::kC3, {"SF", "OAD", "HRW", "HCV", "CCV"}, {"SAT", "OAT", "SAH"}, {"SAP", "FLT", "HWT"},
       {"CP-AHU-6"}, {"CP-AHU-6"}, "C"},
      // No humidity sensor, or CP-AHU-6 would match too.
      {Kind::kC4, {"SF", "OAD", "HRW", "HCV", "CCV"}, {"SAT", "OAT"}, {"SAP", "FLT", "HWT"},
       {"CP-AHU-7"}, {"CP-AHU-7"}, "C"},
      {Kind::kMulti, {"SF", "OAD", "HRW", "HCV", "CCV"}, {"SAT", "OAT", "ZAT", "SAH"}, {"SAP", "FLT"},
       {"CP-AHU-7"}, {"CP-AHU-7", "CP-AHU-6"}, "C"},
      {Kind::kD1, {"SF", "RF", "OAD", "HCV", "CCV", "HUM"}, {"SAT", "OAF", "SAH", "OAT"},
       {"RAT", "MAT", "SAP", "FLT", "HWT"}, {"CP-AHU-8"}, {"CP-AHU-8"}, "D"},
      {Kind::kNone, {"SF", "OAD", "HCV", "CCV"}, {"SAT", "OAT"}, {"MAT", "SAP", "FLT", "HWT"},
       {"CP-AHU-4"}, {}, nullptr},
  };
  return infos;
}

const KindInfo& kind_info(Kind k) {
  for (const KindInfo& i : kinds())
    if (i.kind == k) return i;
  throw Error("unknown corpus kind");
}

const std::vector<std::string> kFlowUnits = {"qudt:M3-PER-HR", "qudt:M3-PER-SEC", "qudt:L-PER-SEC"};

SystemDesign make_ahu(const Taxonomy& t, std::size_t index, Kind kind, Rng& rng) {
  const KindInfo& info = kind_info(kind);
  char id[16];
  std::snprintf(id, sizeof id, "AHU-%02zu", index + 1);
  DesignBuilder b(t, id, std::string("Air handling unit ") + (id + 4), "hvac:AirHandlingUnit");
  b.process(rng.chance(50) ? "hvac:AirConditioning" : "hvac:AirTreatment");
  b.with_ports(rng.chance(40));
  const std::string& flow_unit = rng.pick(kFlowUnits);
  // Class-only requirements tolerate general sensor classes.
  const bool may_generalize = kind == Kind::kA1 || kind == Kind::kB1 || kind == Kind::kB2;

  auto add_component = [&](const std::string& cid) {
    b.component(cid, rng.pick(component_spec(cid).variants));
  };

  for (const std::string& key : info.actuators) {
    const ActuatorRole& role = actuator_role(key);
    for (const std::string& cid : role.components) add_component(cid);
    Actuator a;
    a.id = role.id;
    a.type = b.iri(role.actuator_class);
    VarSpec m = role.manipulates;
    // The defect behind the two unmatched units: heating valve on the coil outlet.
    if (kind == Kind::kNone && key == "HCV") m.position = "elem:outlet";
    const bool is_flow = m.quantity_kind == "qudt:VolumeFlowRate";
    a.manipulates = b.variable(m, is_flow ? flow_unit : "");
    for (const VarSpec& v : role.affects) a.affects.push_back(b.variable(v));
    if (key == "SF" && rng.chance(50))
      a.affects.push_back(b.variable({"brick:Air", "qudt:VolumeFlowRate", "elem:inside", "supply-duct", ""},
                                     flow_unit));
    b.actuator(std::move(a));
  }

  std::vector<std::string> sensors = info.sensors;
  if (kind == Kind::kC4) sensors.push_back(rng.pick(std::vector<std::string>{"MAT", "RAT", "ZAT"}));
  for (const std::string& extra : info.extras) {
    if (std::find(sensors.begin(), sensors.end(), extra) != sensors.end()) continue;
    if (extra == "HWT" && std::find(info.actuators.begin(), info.actuators.end(), "HCV") == info.actuators.end())
      continue;
    if (rng.chance(35)) sensors.push_back(extra);
  }
  for (const std::string& key : sensors) {
    const SensorRole& role = sensor_role(key);
    for (const std::string& cid : role.components) add_component(cid);
    Sensor s;
    s.id = role.id;
    s.type = b.iri(may_generalize ? rng.pick(role.classes) : role.classes.front());
    const bool is_flow = role.observes.quantity_kind == "qudt:VolumeFlowRate";
    s.observes = b.variable(role.observes, is_flow ? flow_unit : "");
    b.sensor(std::move(s));
  }

  DesignSpecification nominal;
  nominal.id = "nominal-supply-airflow";
  nominal.specified_variable =
      b.variable({"brick:Air", "qudt:VolumeFlowRate", "elem:outlet", "supply-fan", ""}, "qudt:M3-PER-HR");
  nominal.nominal_value = 4000.0 + 250.0 * static_cast<double>(index);
  b.specification(std::move(nominal));
  if (kind == Kind::kD1 || rng.chance(30)) {
    DesignSpecification min_oa;
    min_oa.id = "min-outdoor-airflow";
    min_oa.specified_variable =
        b.variable({"brick:Air", "qudt:VolumeFlowRate", "elem:inlet", "oa-damper", ""}, "qudt:M3-PER-HR");
    min_oa.min_value = 600.0 + 50.0 * static_cast<double>(rng.below(12));
    b.specification(std::move(min_oa));
  }
  return b.finish();
}

// ---------------------------------------------------------------------------
// Control program descriptions.

enum class InputStyle { kClassOnly, kAirTemperature, kAirHumidity, kPlaced };
enum class OutputStyle { kClassOnly, kPhysics };

struct CpdPlan {
  std::string id;
  std::string title;
  std::string system_class;
  std::string process;  // "" for none
  std::vector<std::string> class_inputs;  // sensor roles, class-only
  int air_temperature_inputs = 0;         // observes-only
  int air_humidity_inputs = 0;            // observes-only
  std::vector<std::string> placed_inputs; // sensor roles, observes with component and position
  std::vector<std::string> outputs;       // actuator roles
  OutputStyle output_style = OutputStyle::kClassOnly;
  bool min_outdoor_airflow = false;
};

ControlProgramDesc make_cpd(const Taxonomy& t, const CpdPlan& plan) {
  DesignBuilder b(t, "asd-" + plan.id, plan.title, plan.system_class);
  if (!plan.process.empty()) b.process(plan.process);
  ControlProgramDesc cpd;
  cpd.id = plan.id;
  cpd.title = plan.title;

  auto add_input = [&](Sensor s) {
    cpd.inputs.push_back({"in-" + s.id, s.id});
    b.sensor(std::move(s));
  };
  for (const std::string& key : plan.class_inputs) {
    const SensorRole& role = sensor_role(key);
    Sensor s;
    s.id = role.id;
    s.type = b.iri(role.classes.front());
    add_input(std::move(s));
  }
  for (int i = 0; i < plan.air_temperature_inputs; ++i) {
    Sensor s;
    s.id = "air-temp-" + std::to_string(i + 1);
    s.observes = b.variable({"brick:Air", "qudt:Temperature", "", "", ""});
    add_input(std::move(s));
  }
  for (int i = 0; i < plan.air_humidity_inputs; ++i) {
    Sensor s;
    s.id = "air-humidity-" + std::to_string(i + 1);
    s.observes = b.variable({"brick:Air", "qudt:RelativeHumidity", "", "", ""});
    add_input(std::move(s));
  }
  for (const std::string& key : plan.placed_inputs) {
    const SensorRole& role = sensor_role(key);
    for (const std::string& cid : role.components) b.component(cid, component_spec(cid).abstract_class);
    Sensor s;
    s.id = role.id;
    s.observes = b.variable(role.observes);
    add_input(std::move(s));
  }

  for (const std::string& key : plan.outputs) {
    const ActuatorRole& role = actuator_role(key);
    Actuator a;
    a.id = role.id;
    a.type = b.iri(role.actuator_class);
    if (plan.output_style == OutputStyle::kPhysics) {
      for (const std::string& cid : role.components) b.component(cid, component_spec(cid).abstract_class);
      a.manipulates = b.variable(role.manipulates);
      for (const VarSpec& v : role.affects) a.affects.push_back(b.variable(v));
    }
    cpd.outputs.push_back({"out-" + a.id, a.id});
    b.actuator(std::move(a));
  }

  // The process comes from the plan; mechanisms were added with components.
  SystemDesign asd = b.finish();
  if (plan.process.empty()) asd.manages.reset();
  else asd.manages->type = t.resolve(plan.process);

  if (plan.min_outdoor_airflow) {
    CpParameter p;
    p.id = "min-outdoor-airflow";
    p.specified_by.id = "min-outdoor-airflow";
    p.specified_by.specified_variable =
        canonicalize_variable(b.variable({"brick:Air", "qudt:VolumeFlowRate", "elem:inlet", "oa-damper", ""}), t,
                              &asd);
    cpd.parameters.push_back(std::move(p));
  }
  cpd.asds.push_back(std::move(asd));
  return cpd;
}

std::vector<CpdPlan> cpd_plans() {
  const std::vector<std::string> c_out = {"SF", "OAD", "HCV", "CCV"};
  std::vector<CpdPlan> plans;
  CpdPlan p;

  p = {};
  p.id = "CP-AHU-1";
  p.title = "AHU supply air temperature control with economizer";
  p.system_class = "hvac:AirHandlingUnit";
  p.class_inputs = {"SAT", "OAT"};
  p.outputs = {"SF", "OAD", "HCV"};
  plans.push_back(p);

  p = {};
  p.id = "CP-AHU-2";
  p.title = "AHU with return fan, heating and cooling";
  p.system_class = "hvac:AirHandlingUnit";
  p.process = "hvac:AirConditioning";
  p.class_inputs = {"SAT", "RAT", "OAT"};
  p.outputs = {"SF", "RF", "OAD", "HCV", "CCV"};
  plans.push_back(p);

  p = {};
  p.id = "CP-AHU-3";
  p.title = "AHU with heating and humidification";
  p.system_class = "hvac:AirHandlingUnit";
  p.process = "hvac:AirConditioning";
  p.class_inputs = {"SAT", "SAH"};
  p.outputs = {"SF", "OAD", "HCV", "HUM"};
  plans.push_back(p);

  p = {};
  p.id = "CP-AHU-4";
  p.title = "AHU heating and cooling sequence";
  p.system_class = "hvac:AirHandlingUnit";
  p.process = "hvac:AirConditioning";
  p.air_temperature_inputs = 2;
  p.outputs = c_out;
  p.output_style = OutputStyle::kPhysics;
  plans.push_back(p);

  p = {};
  p.id = "CP-AHU-5";
  p.title = "AHU with preheat and reheat coils";
  p.system_class = "hvac:AirHandlingUnit";
  p.process = "hvac:AirConditioning";
  p.air_temperature_inputs = 2;
  p.outputs = {"SF", "OAD", "PHV", "HCV"};
  p.output_style = OutputStyle::kPhysics;
  plans.push_back(p);

  p = {};
  p.id = "CP-AHU-6";
  p.title = "AHU with heat recovery wheel and humidity monitoring";
  p.system_class = "hvac:AirHandlingUnit";
  p.process = "hvac:AirConditioning";
  p.air_temperature_inputs = 2;
  p.air_humidity_inputs = 1;
  p.outputs = {"SF", "OAD", "HRW", "HCV", "CCV"};
  p.output_style = OutputStyle::kPhysics;
  plans.push_back(p);

  p = {};
  p.id = "CP-AHU-7";
  p.title = "AHU with heat recovery wheel and cascade temperature control";
  p.system_class = "hvac:CascadeControlAHU";
  p.process = "hvac:AirConditioning";
  p.air_temperature_inputs = 3;
  p.outputs = {"SF", "OAD", "HRW", "HCV", "CCV"};
  p.output_style = OutputStyle::kPhysics;
  plans.push_back(p);

  p = {};
  p.id = "CP-AHU-8";
  p.title = "AHU with return fan, humidifier and minimum outdoor air";
  p.system_class = "hvac:AirHandlingUnit";
  p.process = "hvac:AirConditioning";
  p.placed_inputs = {"SAT", "OAF", "SAH"};
  p.outputs = {"SF", "RF", "OAD", "HCV", "CCV", "HUM"};
  p.output_style = OutputStyle::kPhysics;
  p.min_outdoor_airflow = true;
  plans.push_back(p);

  p = {};
  p.id = "CP-FCU";
  p.title = "Fan coil unit room temperature control";
  p.system_class = "hvac:FanCoilUnit";
  p.process = "hvac:AirConditioning";
  p.class_inputs = {"ZAT"};
  p.outputs = {"SF", "HCV", "CCV"};
  plans.push_back(p);

  p = {};
  p.id = "CP-VAV";
  p.title = "Variable air volume box control";
  p.system_class = "hvac:VAVBox";
  p.process = "hvac:AirDistribution";
  p.class_inputs = {"ZAT", "OAF"};
  p.outputs = {"OAD"};
  plans.push_back(p);

  p = {};
  p.id = "CP-VENT";
  p.title = "Ventilation unit supply air control";
  p.system_class = "hvac:VentilationUnit";
  p.class_inputs = {"SAT", "OAT"};
  p.outputs = {"SF", "OAD", "HCV"};
  plans.push_back(p);
  return plans;
}

bool is_unique_kind(Kind k) { return k != Kind::kMulti && k != Kind::kNone; }

}  // namespace

CorpusBundle generate_corpus(std::uint64_t seed, const Taxonomy& taxonomy) {
  Rng rng(seed);
  CorpusBundle out;
  out.seed = seed;

  std::vector<Kind> slots;
  auto add = [&](Kind k, int n) { slots.insert(slots.end(), static_cast<std::size_t>(n), k); };
  add(Kind::kA1, 4);
  add(Kind::kB1, 4);
  add(Kind::kB2, 4);
  add(Kind::kC1, 4);
  add(Kind::kC2, 4);
  add(Kind::kC3, 4);
  add(Kind::kC4, 3);
  add(Kind::kMulti, 1);
  add(Kind::kD1, 4);
  add(Kind::kNone, 2);
  rng.shuffle(slots);
  // AHU-01 and AHU-07 serve as documented unique-match examples.
  for (std::size_t fixed : {std::size_t{0}, std::size_t{6}}) {
    if (is_unique_kind(slots[fixed])) continue;
    for (std::size_t j = 0; j < slots.size(); ++j) {
      if (j != 0 && j != 6 && is_unique_kind(slots[j])) {
        std::swap(slots[fixed], slots[j]);
        break;
      }
    }
  }

  for (std::size_t i = 0; i < slots.size(); ++i) {
    out.sdds.push_back(make_ahu(taxonomy, i, slots[i], rng));
    const KindInfo& info = kind_info(slots[i]);
    GroundTruthEntry g;
    g.sdd_id = out.sdds.back().id;
    g.deployed = info.deployed_and_expected.front();
    g.expected = info.expected;
    if (info.group != nullptr) g.group = info.group;
    out.ground_truth.push_back(std::move(g));
  }
  for (const CpdPlan& plan : cpd_plans()) out.cpds.push_back(make_cpd(taxonomy, plan));
  return out;
}

std::string ground_truth_to_json(const CorpusBundle& corpus) {
  Json entries = Json::array();
  for (const GroundTruthEntry& g : corpus.ground_truth) {
    Json e = Json::object();
    e["sdd"] = g.sdd_id;
    e["deployed"] = g.deployed;
    e["expectedMatches"] = g.expected;
    e["group"] = g.group ? Json(*g.group) : Json(nullptr);
    entries.push_back(std::move(e));
  }
  Json j = Json::object();
  j["seed"] = corpus.seed;
  j["entries"] = std::move(entries);
  return detail::dump_json(j);
}

void write_corpus(const CorpusBundle& corpus, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  // Stale files from an earlier run would join the library on load.
  for (const char* sub : {"sdd", "cpd"}) {
    fs::create_directories(dir / sub);
    for (const fs::path& p : list_json_files(dir / sub)) fs::remove(p);
  }
  FleetManifest manifest;
  for (const SystemDesign& s : corpus.sdds) {
    write_text_file(dir / "sdd" / (s.id + ".json"), serialize_sdd(s));
    manifest.entries.push_back({s.id, fs::path("sdd") / (s.id + ".json"), std::nullopt});
  }
  for (const ControlProgramDesc& c : corpus.cpds)
    write_text_file(dir / "cpd" / (c.id + ".json"), serialize_cpd(c));
  write_text_file(dir / "ground-truth.json", ground_truth_to_json(corpus));
  write_text_file(dir / "manifest.json", manifest.to_json());
}

CorpusBundle load_corpus(const std::filesystem::path& dir, const Taxonomy& taxonomy) {
  CorpusBundle out;
  for (const auto& path : list_json_files(dir / "sdd")) {
    try {
      out.sdds.push_back(parse_sdd(read_text_file(path), taxonomy));
    } catch (const Error& e) {
      throw Error(path.string() + ": " + e.what());
    }
  }
  std::sort(out.sdds.begin(), out.sdds.end(),
            [](const SystemDesign& a, const SystemDesign& b) { return a.id < b.id; });
  out.cpds = load_cpd_library(dir / "cpd", taxonomy);

  const auto gt_path = dir / "ground-truth.json";
  const Json j = detail::parse_json(read_text_file(gt_path));
  try {
    out.seed = j.at("seed").get<std::uint64_t>();
    for (const Json& e : j.at("entries")) {
      GroundTruthEntry g;
      g.sdd_id = e.at("sdd").get<std::string>();
      g.deployed = e.at("deployed").get<std::string>();
      g.expected = e.at("expectedMatches").get<std::vector<std::string>>();
      if (!e.at("group").is_null()) g.group = e.at("group").get<std::string>();
      out.ground_truth.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(gt_path.string(), e.what());
  }
  return out;
}

AblationReport ablation_study(const CorpusBundle& corpus, const Taxonomy& taxonomy,
                              const MatchOptions& options) {
  std::map<std::string, const GroundTruthEntry*> truth;
  for (const GroundTruthEntry& g : corpus.ground_truth) truth[g.sdd_id] = &g;

  std::vector<ThingDescription> tds;
  for (const SystemDesign& s : corpus.sdds) tds.push_back(synthesize_td(s, taxonomy));
  const MatchMatrix base = match_all(tds, corpus.cpds, taxonomy, options);

  AblationReport report;
  for (MetadataAspect a : kAllAspects) report.aspects.push_back({a, 0, 0});
  std::vector<std::pair<std::string, std::vector<MetadataAspect>>> per_td;

  for (std::size_t i = 0; i < tds.size(); ++i) {
    const TdSummary& summary = base.summaries[i];
    auto it = truth.find(summary.td_id);
    if (summary.matches.empty() || it == truth.end() || summary.matches != it->second->expected) continue;
    ++report.successful;
    std::vector<MetadataAspect> necessary;
    for (std::size_t k = 0; k < kAllAspects.size(); ++k) {
      const ThingDescription ablated = ablate_td(tds[i], kAllAspects[k]);
      bool lost = false;
      for (std::size_t c = 0; c < corpus.cpds.size() && !lost; ++c) {
        const bool wanted = std::find(summary.matches.begin(), summary.matches.end(), corpus.cpds[c].id) !=
                            summary.matches.end();
        if (wanted && !match(ablated, corpus.cpds[c], taxonomy, options).overall) lost = true;
      }
      if (lost) {
        necessary.push_back(kAllAspects[k]);
        ++report.aspects[k].necessary;
      }
    }
    per_td.emplace_back(summary.td_id, std::move(necessary));
  }
  for (AspectNecessity& a : report.aspects)
    a.percent = report.successful == 0 ? 0 : static_cast<int>(100 * a.necessary / report.successful);

  // Distinct necessity sets become groups.
  std::map<std::vector<MetadataAspect>, std::vector<std::string>> sets;
  for (auto& [td, aspects] : per_td) sets[aspects].push_back(td);
  std::vector<std::pair<std::vector<MetadataAspect>, std::vector<std::string>>> ordered(sets.begin(), sets.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.first.size() < b.first.size(); });
  for (std::size_t g = 0; g < ordered.size(); ++g) {
    std::string label;
    std::size_t n = g;
    do {
      label.insert(label.begin(), static_cast<char>('A' + n % 26));
      n /= 26;
    } while (n-- > 0);
    report.groups.push_back({label, ordered[g].first, ordered[g].second});
  }
  return report;
}

std::string ablation_to_json(const AblationReport& report) {
  Json j = Json::object();
  j["successfulMatches"] = report.successful;
  Json aspects = Json::array();
  for (const AspectNecessity& a : report.aspects) {
    Json x = Json::object();
    x["aspect"] = std::string(aspect_tag(a.aspect));
    x["label"] = std::string(aspect_label(a.aspect));
    x["necessary"] = a.necessary;
    x["percent"] = a.percent;
    aspects.push_back(std::move(x));
  }
  j["aspects"] = std::move(aspects);
  Json groups = Json::array();
  for (const AblationGroup& g : report.groups) {
    Json x = Json::object();
    x["group"] = g.label;
    x["size"] = g.td_ids.size();
    Json nec = Json::array();
    for (MetadataAspect a : g.necessary) nec.push_back(std::string(aspect_tag(a)));
    x["necessary"] = std::move(nec);
    x["tds"] = g.td_ids;
    groups.push_back(std::move(x));
  }
  j["groups"] = std::move(groups);
  return detail::dump_json(j);
}

std::string render_ablation_table(const AblationReport& report) {
  std::vector<std::string> labels;
  std::size_t width = 0;
  for (const AspectNecessity& a : report.aspects) {
    labels.push_back(std::string(aspect_label(a.aspect)) + " (" + std::to_string(a.percent) + "%)");
    width = std::max(width, labels.back().size());
  }
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  const std::string title = "TD metadata (% of " + std::to_string(report.successful) + " matches)";
  width = std::max(width, title.size());
  std::ostringstream out;
  out << pad(title, width);
  for (const AblationGroup& g : report.groups) out << "  " << pad(g.label, 5);
  out << "\n" << pad("", width);
  for (const AblationGroup& g : report.groups) out << "  " << pad("(" + std::to_string(g.td_ids.size()) + ")", 5);
  out << "\n";
  for (std::size_t k = 0; k < report.aspects.size(); ++k) {
    out << pad(labels[k], width);
    for (const AblationGroup& g : report.groups) {
      const bool on =
          std::find(g.necessary.begin(), g.necessary.end(), report.aspects[k].aspect) != g.necessary.end();
      out << "  " << pad(on ? "x" : ".", 5);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace phydit
