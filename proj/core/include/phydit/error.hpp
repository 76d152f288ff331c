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

#include <stdexcept>
#include <string>
#include <vector>

namespace phydit {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document. `path` locates the offending value, e.g.
// "/sensors/2/observes/stuff", and is empty for whole-document failures.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class UnknownPrefixError : public Error {
 public:
  explicit UnknownPrefixError(const std::string& prefix)
      : Error("unknown prefix '" + prefix + "'"), prefix_(prefix) {}

  const std::string& prefix() const noexcept { return prefix_; }

 private:
  std::string prefix_;
};

class UnknownClassError : public Error {
 public:
  explicit UnknownClassError(const std::string& curie)
      : Error("class '" + curie + "' is not in the taxonomy"), curie_(curie) {}

  const std::string& curie() const noexcept { return curie_; }

 private:
  std::string curie_;
};

// Subclass assertions that close a loop. `cycle` lists the classes in order,
// with the first class repeated at the end.
class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> cycle)
      : Error(describe(cycle)), cycle_(std::move(cycle)) {}

  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  static std::string describe(const std::vector<std::string>& cycle) {
    std::string out = "subclass cycle: ";
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i != 0) out += " -> ";
      out += cycle[i];
    }
    return out;
  }

  std::vector<std::string> cycle_;
};

// A reference inside a document that does not resolve, or resolves to more
// than one candidate.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

class AmbiguityError : public ReferenceError {
 public:
  using ReferenceError::ReferenceError;
};

}  // namespace phydit
