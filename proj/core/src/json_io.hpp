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

// Shared JSON plumbing for the SDD, CPD and TD codecs. Not installed.

#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "phydit/diagnostic.hpp"
#include "phydit/model.hpp"
#include "phydit/sdd.hpp"

namespace phydit::detail {

using Json = nlohmann::ordered_json;

Json parse_json(std::string_view text);
std::string dump_json(const Json& j);

std::string child_path(const std::string& path, std::string_view key);
std::string child_path(const std::string& path, std::size_t index);

const Json& require_object(const Json& j, const std::string& path);
const Json* find(const Json& obj, std::string_view key);
void check_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& path);

std::string get_string(const Json& obj, std::string_view key, const std::string& path);
std::optional<std::string> get_opt_string(const Json& obj, std::string_view key,
                                          const std::string& path);
std::optional<double> get_opt_number(const Json& obj, std::string_view key,
                                      const std::string& path);
Iri to_iri(const Json& value, const std::string& path, const PrefixTable& prefixes);
Iri get_iri(const Json& obj, std::string_view key, const std::string& path,
            const PrefixTable& prefixes);
std::optional<Iri> get_opt_iri(const Json& obj, std::string_view key, const std::string& path,
                               const PrefixTable& prefixes);
// `{"@type": "prefix:local"}` wrapper used throughout the TD profile.
Iri get_typed(const Json& obj, std::string_view key, const std::string& path,
              const PrefixTable& prefixes);
std::optional<Iri> get_opt_typed(const Json& obj, std::string_view key,
                                 const std::string& path, const PrefixTable& prefixes);
Json typed(const Iri& iri);

enum class VariableStyle {
  kDesign,  // atComponent is a component id
  kThing,   // atComponent is {"@type": class}
};

// Accepts both atComponent forms regardless of style.
ProcessVariable read_variable(const Json& j, const std::string& path, const PrefixTable& prefixes);
// Same, ignoring unknown keys (TD profile).
ProcessVariable read_variable_loose(const Json& j, const std::string& path,
                                    const PrefixTable& prefixes);
Json write_variable(const ProcessVariable& v, VariableStyle style);

DesignSpecification read_specification(const Json& j, const std::string& path,
                                       const PrefixTable& prefixes);
Json write_specification_values(const DesignSpecification& d, Json j);

// Shape-level decoding of an SDD/ASD object. Class positions are checked
// against the taxonomy; references are resolved and variables canonicalized.
SystemDesign read_design(const Json& j, const std::string& path, const Taxonomy& taxonomy);
Json write_design(const SystemDesign& s);

// validate_sdd with diagnostic paths rooted at `path`.
Diagnostics validate_design(const SystemDesign& s, const Taxonomy& taxonomy, ValidationMode mode,
                            const std::string& path);

}  // namespace phydit::detail
