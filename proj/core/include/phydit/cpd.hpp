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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "phydit/diagnostic.hpp"
#include "phydit/model.hpp"

namespace phydit {

struct CpInput {
  std::string id;
  std::string intended_for;  // sensor id in one of the ASDs

  friend bool operator==(const CpInput&, const CpInput&) = default;
};

struct CpOutput {
  std::string id;
  std::string intended_for;  // actuator id in one of the ASDs

  friend bool operator==(const CpOutput&, const CpOutput&) = default;
};

struct CpParameter {
  std::string id;
  DesignSpecification specified_by;  // requirement; values normally absent

  friend bool operator==(const CpParameter&, const CpParameter&) = default;
};

// Description of a reusable control program: its IO interface, the design
// parameters it needs, and the abstract system design(s) it was written for.
struct ControlProgramDesc {
  std::string id;
  std::string title;
  std::vector<SystemDesign> asds;
  std::vector<CpInput> inputs;
  std::vector<CpOutput> outputs;
  std::vector<CpParameter> parameters;

  // Lookups across every ASD; ids are unique over all of them.
  const Sensor* find_sensor(std::string_view sensor_id) const;
  const Actuator* find_actuator(std::string_view actuator_id) const;

  friend bool operator==(const ControlProgramDesc&, const ControlProgramDesc&) = default;
};

// Decodes a CPD JSON document (core/schema/cpd.schema.json). Throws
// ParseError on schema violations and ReferenceError when an IO's
// intendedFor names no sensor/actuator of the ASDs.
ControlProgramDesc parse_cpd(std::string_view json, const Taxonomy& taxonomy);

std::string serialize_cpd(const ControlProgramDesc& cpd);

// ASDs are validated in relaxed mode; IO references and parameter variables
// are checked as well.
Diagnostics validate_cpd(const ControlProgramDesc& cpd, const Taxonomy& taxonomy);

// Every `*.json` CPD in `dir`, in file-name order. Throws on the first file
// that fails to parse (the message names it) and on duplicate CPD ids.
std::vector<ControlProgramDesc> load_cpd_library(const std::filesystem::path& dir,
                                                 const Taxonomy& taxonomy);

}  // namespace phydit
