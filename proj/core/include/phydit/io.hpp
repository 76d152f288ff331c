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

namespace phydit {

// Throw Error naming the path on failure.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

// Regular `*.json` files directly inside `dir`, sorted by file name.
std::vector<std::filesystem::path> list_json_files(const std::filesystem::path& dir);

// $PHYDIT_TAXONOMY if set, else the source-tree copy when it still exists,
// else the installed one.
std::filesystem::path default_taxonomy_path();

}  // namespace phydit
