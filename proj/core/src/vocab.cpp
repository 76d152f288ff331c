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

#include "phydit/vocab.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace phydit {
namespace {

bool valid_token(std::string_view token) {
  if (token.empty() || !std::isalpha(static_cast<unsigned char>(token.front())))
    return false;
  return std::all_of(token.begin(), token.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

bool valid_local(std::string_view local) {
  if (local.empty()) return false;
  return std::none_of(local.begin(), local.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '>' ||
           c == '"';
  });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

void PrefixTable::add(std::string token, std::string base) {
  if (!valid_token(token)) throw ParseError("", "invalid prefix token '" + token + "'");
  if (base.empty()) throw ParseError("", "empty namespace for prefix '" + token + "'");
  auto it = bases_.find(token);
  if (it != bases_.end()) {
    if (it->second != base)
      throw ParseError("", "prefix '" + token + "' redeclared with a different namespace");
    return;
  }
  bases_.emplace(std::move(token), std::move(base));
}

bool PrefixTable::contains(std::string_view token) const {
  return bases_.find(token) != bases_.end();
}

std::optional<std::string> PrefixTable::base(std::string_view token) const {
  auto it = bases_.find(token);
  if (it == bases_.end()) return std::nullopt;
  return it->second;
}

Iri PrefixTable::make(std::string_view prefix, std::string_view local) const {
  auto it = bases_.find(prefix);
  if (it == bases_.end()) throw UnknownPrefixError(std::string(prefix));
  if (!valid_local(local))
    throw ParseError("", "invalid local name '" + std::string(local) + "'");
  return Iri(std::string(prefix), std::string(local), it->second + std::string(local));
}

Iri PrefixTable::resolve(std::string_view curie) const {
  auto colon = curie.find(':');
  if (colon == std::string_view::npos || colon == 0)
    throw ParseError("", "'" + std::string(curie) + "' is not a prefix:local name");
  return make(curie.substr(0, colon), curie.substr(colon + 1));
}

// --- TaxonomyBuilder -------------------------------------------------------

TaxonomyBuilder& TaxonomyBuilder::add_prefix(std::string token, std::string base) {
  prefixes_.add(std::move(token), std::move(base));
  return *this;
}

std::size_t TaxonomyBuilder::intern(const Iri& cls) {
  auto [it, inserted] = index_.try_emplace(cls.expanded(), classes_.size());
  if (inserted) {
    classes_.push_back(cls);
    parents_.emplace_back();
  }
  return it->second;
}

TaxonomyBuilder& TaxonomyBuilder::declare(const Iri& cls) {
  intern(cls);
  return *this;
}

TaxonomyBuilder& TaxonomyBuilder::add_subclass(const Iri& sub, const Iri& super) {
  std::size_t s = intern(sub);
  std::size_t p = intern(super);
  auto& parents = parents_[s];
  if (std::find(parents.begin(), parents.end(), p) == parents.end()) parents.push_back(p);
  return *this;
}

Taxonomy TaxonomyBuilder::build() const {
  const std::size_t n = classes_.size();

  // Cycle check by depth-first search over the parent edges.
  enum class Mark : std::uint8_t { kNew, kOnStack, kDone };
  std::vector<Mark> mark(n, Mark::kNew);
  std::vector<std::size_t> order;  // parents before children
  order.reserve(n);
  for (std::size_t root = 0; root < n; ++root) {
    if (mark[root] != Mark::kNew) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    mark[root] = Mark::kOnStack;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < parents_[node].size()) {
        std::size_t parent = parents_[node][next++];
        if (mark[parent] == Mark::kOnStack) {
          std::vector<std::string> cycle;
          auto from = std::find_if(stack.begin(), stack.end(),
                                   [&](const auto& f) { return f.first == parent; });
          for (auto it = from; it != stack.end(); ++it)
            cycle.push_back(classes_[it->first].curie());
          cycle.push_back(classes_[parent].curie());
          throw CycleError(std::move(cycle));
        }
        if (mark[parent] == Mark::kNew) {
          mark[parent] = Mark::kOnStack;
          stack.emplace_back(parent, 0);
        }
      } else {
        mark[node] = Mark::kDone;
        order.push_back(node);
        stack.pop_back();
      }
    }
  }

  Taxonomy t;
  t.prefixes_ = prefixes_;
  t.classes_ = classes_;
  t.index_ = index_;
  t.parents_ = parents_;
  t.words_per_row_ = (n + 63) / 64;
  t.closure_.assign(n * t.words_per_row_, 0);
  t.depth_.assign(n, 0);
  const std::size_t w = t.words_per_row_;
  for (std::size_t node : order) {
    std::uint64_t* row = &t.closure_[node * w];
    row[node / 64] |= std::uint64_t{1} << (node % 64);
    for (std::size_t parent : parents_[node]) {
      const std::uint64_t* prow = &t.closure_[parent * w];
      for (std::size_t k = 0; k < w; ++k) row[k] |= prow[k];
    }
    std::size_t count = 0;
    for (std::size_t k = 0; k < w; ++k) count += static_cast<std::size_t>(__builtin_popcountll(row[k]));
    t.depth_[node] = count - 1;
  }
  return t;
}

// --- Taxonomy --------------------------------------------------------------

Taxonomy Taxonomy::parse(std::string_view text) {
  TaxonomyBuilder builder;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    // '#' opens a comment at line start or after whitespace, so namespaces
    // ending in '#' survive.
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    auto fields = split_ws(line);
    try {
      if (fields[0] == "@prefix") {
        if (fields.size() != 3) throw ParseError(where, "expected '@prefix <token> <iri>'");
        std::string_view token = fields[1];
        if (!token.empty() && token.back() == ':') token.remove_suffix(1);
        std::string_view base = fields[2];
        if (base.size() >= 2 && base.front() == '<' && base.back() == '>')
          base = base.substr(1, base.size() - 2);
        builder.add_prefix(std::string(token), std::string(base));
      } else if (fields.size() == 1) {
        builder.declare(builder.prefixes().resolve(fields[0]));
      } else if (fields.size() == 3 && fields[1] == "subClassOf") {
        builder.add_subclass(builder.prefixes().resolve(fields[0]),
                             builder.prefixes().resolve(fields[2]));
      } else {
        throw ParseError(where, "expected '<curie> subClassOf <curie>'");
      }
    } catch (const UnknownPrefixError& e) {
      throw ParseError(where, e.what());
    } catch (const ParseError& e) {
      if (!e.path().empty()) throw;
      throw ParseError(where, e.what());
    }
  }
  return builder.build();
}

Taxonomy Taxonomy::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open taxonomy file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

Iri Taxonomy::resolve_class(std::string_view curie) const {
  Iri iri = resolve(curie);
  if (!contains(iri)) throw UnknownClassError(iri.curie());
  return iri;
}

std::size_t Taxonomy::index_of(const Iri& cls) const {
  auto it = index_.find(cls.expanded());
  if (it == index_.end()) throw UnknownClassError(cls.curie());
  return it->second;
}

std::vector<Iri> Taxonomy::direct_superclasses(const Iri& cls) const {
  std::vector<Iri> out;
  for (std::size_t p : parents_[index_of(cls)]) out.push_back(classes_[p]);
  return out;
}

bool Taxonomy::subclass_of(const Iri& sub, const Iri& super) const {
  const std::size_t s = index_of(sub);
  const std::size_t p = index_of(super);
  return (closure_[s * words_per_row_ + p / 64] >> (p % 64)) & 1U;
}

std::size_t Taxonomy::depth(const Iri& cls) const { return depth_[index_of(cls)]; }

}  // namespace phydit
