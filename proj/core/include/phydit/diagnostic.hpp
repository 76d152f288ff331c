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

#include <ostream>
#include <string>
#include <vector>

namespace phydit {

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string path;  // JSON pointer into the document
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Diagnostic& d) {
  return os << (d.severity == Severity::kError ? "error" : "warning") << " "
            << (d.path.empty() ? "/" : d.path) << ": " << d.message;
}

using Diagnostics = std::vector<Diagnostic>;

}  // namespace phydit
