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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phydit/cpd.hpp"
#include "phydit/td.hpp"

namespace phydit {

struct MatchOptions {
  // Compare component classes of process variables when both sides carry one.
  bool compare_component = true;
};

struct Binding {
  enum class Kind { kInput, kOutput, kParameter };
  Kind kind;
  std::string cp_id;    // CP input/output/parameter id
  std::string td_name;  // property, action or specification name

  friend bool operator==(const Binding&, const Binding&) = default;
};

struct FailureReason {
  std::string rule;     // "system", "process", "input", "output", "coverage", "specification"
  std::string subject;  // CP IO/parameter id, TD affordance name, or document id
  std::string message;

  friend bool operator==(const FailureReason&, const FailureReason&) = default;
};

struct MatchReport {
  std::string td_id;
  std::string cpd_id;
  bool system_compatible = false;
  bool process_compatible = false;
  bool input_compatible = false;
  bool output_compatible = false;
  bool action_coverage = false;
  bool spec_compatible = false;
  bool overall = false;
  std::vector<Binding> bindings;
  std::vector<FailureReason> failure_reasons;

  friend bool operator==(const MatchReport&, const MatchReport&) = default;
};

// Verdict of one rule with its witnesses.
struct RuleResult {
  bool satisfied = false;
  std::vector<Binding> bindings;
  std::optional<FailureReason> failure;
};

// Reflexive subclass test that is false for unregistered classes instead of
// throwing.
bool is_a(const Taxonomy& taxonomy, const Iri& sub, const Iri& super);

// Symmetric process-variable equivalence: same stuff, quantity kind and
// position (or both without one). Units are never compared. With
// compare_component, component classes present on both sides must be related
// by subclass in either direction.
bool equivalent(const ProcessVariable& a, const ProcessVariable& b, const Taxonomy& taxonomy,
                const MatchOptions& options = {});

// Directional form used by the rules: everything the requirement states
// (position, component) must be stated equivalently by the offer. Absent
// offer metadata never satisfies a stated requirement.
bool satisfies(const ProcessVariable& required, const ProcessVariable& offered,
               const Taxonomy& taxonomy, const MatchOptions& options = {});

// Pair predicates behind the input and output rules.
bool sensor_fits(const Sensor& required, const PropertyAffordance& offered,
                 const Taxonomy& taxonomy, const MatchOptions& options = {});
bool actuator_fits(const Actuator& required, const ActionAffordance& offered,
                   const Taxonomy& taxonomy, const MatchOptions& options = {});

// Maximum bipartite matching by augmenting paths, scanning candidates in
// index order so the result is deterministic. adjacency[l][r] tells whether
// left l may pair with right r. Returns the partner of every left vertex, or
// -1.
std::vector<int> max_bipartite_matching(const std::vector<std::vector<bool>>& adjacency,
                                        std::size_t right_count);

bool is_system_compatible(const ControlProgramDesc& cpd, const ThingDescription& td,
                          const Taxonomy& taxonomy);
bool is_process_compatible(const ControlProgramDesc& cpd, const ThingDescription& td,
                           const Taxonomy& taxonomy);
RuleResult is_input_compatible(const ControlProgramDesc& cpd, const ThingDescription& td,
                               const Taxonomy& taxonomy, const MatchOptions& options = {});
RuleResult is_output_compatible(const ControlProgramDesc& cpd, const ThingDescription& td,
                                const Taxonomy& taxonomy, const MatchOptions& options = {});
bool has_action_coverage(const ControlProgramDesc& cpd, const ThingDescription& td,
                         const Taxonomy& taxonomy, const MatchOptions& options = {});
RuleResult is_spec_compatible(const ControlProgramDesc& cpd, const ThingDescription& td,
                              const Taxonomy& taxonomy, const MatchOptions& options = {});

MatchReport match(const ThingDescription& td, const ControlProgramDesc& cpd,
                  const Taxonomy& taxonomy, const MatchOptions& options = {});

enum class MatchOutcome { kUnique, kMulti, kNone };
std::string_view outcome_name(MatchOutcome outcome);

struct TdSummary {
  std::string td_id;
  MatchOutcome outcome = MatchOutcome::kNone;
  std::vector<std::string> matches;  // CPD ids, most specific ASD first

  friend bool operator==(const TdSummary&, const TdSummary&) = default;
};

struct MatchMatrix {
  std::vector<std::string> td_ids;
  std::vector<std::string> cpd_ids;
  std::vector<MatchReport> reports;  // row-major, one row per TD
  std::vector<TdSummary> summaries;  // one per TD, input order

  const MatchReport& at(std::size_t td, std::size_t cpd) const {
    return reports[td * cpd_ids.size() + cpd];
  }
};

// Every TD against every CPD, in input order.
MatchMatrix match_all(const std::vector<ThingDescription>& tds,
                      const std::vector<ControlProgramDesc>& cpds, const Taxonomy& taxonomy,
                      const MatchOptions& options = {});

// Serialization for `--json` output. Deterministic.
std::string report_to_json(const MatchReport& report);
std::string reports_to_json(const std::vector<MatchReport>& reports);
std::string summaries_to_json(const std::vector<TdSummary>& summaries);

// Fixed-width text tables for the CLI.
std::string render_reports(const std::vector<MatchReport>& reports);
std::string render_summaries(const std::vector<TdSummary>& summaries);

}  // namespace phydit
