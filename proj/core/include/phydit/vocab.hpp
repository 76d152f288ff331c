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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "phydit/error.hpp"

namespace phydit {

class PrefixTable;

// A namespaced identifier. Keeps the compact `prefix:local` spelling for
// rendering, but identity is the expanded IRI string.
class Iri {
 public:
  Iri() = default;

  const std::string& prefix() const noexcept { return prefix_; }
  const std::string& local() const noexcept { return local_; }
  const std::string& expanded() const noexcept { return expanded_; }
  std::string curie() const { return prefix_ + ":" + local_; }
  bool empty() const noexcept { return expanded_.empty(); }

  friend bool operator==(const Iri& a, const Iri& b) noexcept {
    return a.expanded_ == b.expanded_;
  }
  friend auto operator<=>(const Iri& a, const Iri& b) noexcept {
    return a.expanded_ <=> b.expanded_;
  }

 private:
  friend class PrefixTable;
  Iri(std::string prefix, std::string local, std::string expanded)
      : prefix_(std::move(prefix)),
        local_(std::move(local)),
        expanded_(std::move(expanded)) {}

  std::string prefix_;
  std::string local_;
  std::string expanded_;
};

// Registered namespace prefixes. Only Iris built through a table exist, so
// expansion is total by construction.
class PrefixTable {
 public:
  // Re-registering a token with the same base is a no-op; a different base
  // throws ParseError.
  void add(std::string token, std::string base);

  bool contains(std::string_view token) const;
  std::optional<std::string> base(std::string_view token) const;

  Iri make(std::string_view prefix, std::string_view local) const;
  // Accepts "prefix:local". Throws UnknownPrefixError or ParseError.
  Iri resolve(std::string_view curie) const;

  const std::map<std::string, std::string, std::less<>>& entries() const noexcept {
    return bases_;
  }

 private:
  std::map<std::string, std::string, std::less<>> bases_;
};

// The class hierarchy. Immutable once built; the reflexive-transitive closure
// is precomputed so subclass_of is a bit lookup.
class Taxonomy {
 public:
  Taxonomy() = default;

  // Text format: see docs/taxonomy-format.md.
  static Taxonomy parse(std::string_view text);
  static Taxonomy load(const std::filesystem::path& path);

  const PrefixTable& prefixes() const noexcept { return prefixes_; }
  Iri resolve(std::string_view curie) const { return prefixes_.resolve(curie); }
  // Like resolve(), but also requires the class to be registered.
  Iri resolve_class(std::string_view curie) const;

  std::size_t size() const noexcept { return classes_.size(); }
  bool contains(const Iri& cls) const { return index_.count(cls.expanded()) != 0; }
  const std::vector<Iri>& classes() const noexcept { return classes_; }
  std::vector<Iri> direct_superclasses(const Iri& cls) const;

  // sub ⊑ super under the reflexive-transitive closure. Throws
  // UnknownClassError when either class is unregistered.
  bool subclass_of(const Iri& sub, const Iri& super) const;
  // Number of strict ancestors; used as a specificity measure.
  std::size_t depth(const Iri& cls) const;

 private:
  friend class TaxonomyBuilder;

  std::size_t index_of(const Iri& cls) const;

  PrefixTable prefixes_;
  std::vector<Iri> classes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> parents_;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> closure_;
  std::vector<std::size_t> depth_;
};

// Incremental construction; Taxonomy::parse is a thin layer over this.
class TaxonomyBuilder {
 public:
  TaxonomyBuilder& add_prefix(std::string token, std::string base);
  TaxonomyBuilder& declare(const Iri& cls);
  // Declares both classes. Repeating a class with other parents unions them.
  TaxonomyBuilder& add_subclass(const Iri& sub, const Iri& super);

  const PrefixTable& prefixes() const noexcept { return prefixes_; }

  // Throws CycleError naming one offending cycle.
  Taxonomy build() const;

 private:
  std::size_t intern(const Iri& cls);

  PrefixTable prefixes_;
  std::vector<Iri> classes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> parents_;
};

// Returns the single declared class of a typed individual (anything with an
// `id` and a `type` member holding an Iri or optional Iri). Throws Error when
// the individual carries no class.
template <typename T>
const Iri& class_of(const T& individual) {
  using Type = std::remove_cvref_t<decltype(individual.type)>;
  if constexpr (std::is_same_v<Type, Iri>) {
    if (individual.type.empty())
      throw Error("individual '" + std::string(individual.id) + "' has no declared class");
    return individual.type;
  } else {
    if (!individual.type || individual.type->empty())
      throw Error("individual '" + std::string(individual.id) + "' has no declared class");
    return *individual.type;
  }
}

}  // namespace phydit

template <>
struct std::hash<phydit::Iri> {
  std::size_t operator()(const phydit::Iri& iri) const noexcept {
    return std::hash<std::string>{}(iri.expanded());
  }
};
