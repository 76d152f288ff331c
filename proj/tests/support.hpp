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

// Fixture helpers shared by the test binaries.

#pragma once

#include <filesystem>
#include <string>

#include <unistd.h>

#include <json.hpp>

#include "phydit/io.hpp"
#include "phydit/vocab.hpp"

namespace phydit::testing {

inline const Taxonomy& shipped() {
  static const Taxonomy t = Taxonomy::load(PHYDIT_TEST_TAXONOMY);
  return t;
}

inline std::filesystem::path data(const std::string& name) {
  return std::filesystem::path(PHYDIT_TEST_DATA) / name;
}

inline std::string fixture(const std::string& name) { return read_text_file(data(name)); }

// Fresh scratch directory under the system temp dir. The pid keeps parallel
// ctest processes apart.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("phydit-test-" + std::to_string(::getpid()) + "-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Every key of `expected` is present in `actual` with a matching value,
// recursively; arrays must agree element-wise. Key order is irrelevant and
// 50 equals 50.0. On mismatch `where` names the first differing path.
inline bool json_contains(const nlohmann::json& actual, const nlohmann::json& expected, std::string& where,
                          const std::string& path = "") {
  if (expected.is_object()) {
    if (!actual.is_object()) return where = path, false;
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      if (!actual.contains(it.key())) return where = path + "/" + it.key(), false;
      if (!json_contains(actual.at(it.key()), it.value(), where, path + "/" + it.key())) return false;
    }
    return true;
  }
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size()) return where = path, false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (!json_contains(actual[i], expected[i], where, path + "/" + std::to_string(i))) return false;
    return true;
  }
  if (actual == expected) return true;
  where = path;
  return false;
}

}  // namespace phydit::testing
