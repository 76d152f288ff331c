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

#include <string>
#include <string_view>

#include "phydit/diagnostic.hpp"
#include "phydit/model.hpp"

namespace phydit {

// Decodes an SDD JSON document (core/schema/sdd.schema.json). The result is
// reference-checked and canonicalized. Throws ParseError on schema
// violations, ReferenceError on dangling ids, UnknownClassError on classes
// missing from the taxonomy.
SystemDesign parse_sdd(std::string_view json, const Taxonomy& taxonomy);

std::string serialize_sdd(const SystemDesign& design);

enum class ValidationMode {
  kStrict,   // concrete system design
  kRelaxed,  // abstract design embedded in a control program
};

// One diagnostic per violated invariant; empty iff the design is valid.
Diagnostics validate_sdd(const SystemDesign& design, const Taxonomy& taxonomy,
                         ValidationMode mode = ValidationMode::kStrict);

}  // namespace phydit
