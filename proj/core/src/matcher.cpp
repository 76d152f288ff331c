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

#include "phydit/matcher.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace phydit {
namespace {

using Json = nlohmann::ordered_json;

bool related(const Taxonomy& t, const Iri& a, const Iri& b) {
  return is_a(t, a, b) || is_a(t, b, a);
}

bool try_augment(std::size_t l, const std::vector<std::vector<bool>>& adj,
                 std::vector<int>& right_of_left, std::vector<int>& left_of_right,
                 std::vector<char>& visited) {
  for (std::size_t r = 0; r < left_of_right.size(); ++r) {
    if (!adj[l][r] || visited[r]) continue;
    visited[r] = 1;
    if (left_of_right[r] < 0 ||
        try_augment(static_cast<std::size_t>(left_of_right[r]), adj, right_of_left, left_of_right,
                    visited)) {
      left_of_right[r] = static_cast<int>(l);
      right_of_left[l] = static_cast<int>(r);
      return true;
    }
  }
  return false;
}

std::vector<const SystemDesign*> compatible_asds(const ControlProgramDesc& cpd,
                                                 const ThingDescription& td, const Taxonomy& t) {
  std::vector<const SystemDesign*> out;
  if (!td.thing_class) return out;
  for (const SystemDesign& asd : cpd.asds)
    if (is_a(t, asd.system_type, *td.thing_class)) out.push_back(&asd);
  return out;
}

std::vector<std::vector<bool>> output_graph(const ControlProgramDesc& cpd,
                                            const ThingDescription& td, const Taxonomy& t,
                                            const MatchOptions& o) {
  std::vector<std::vector<bool>> adj(cpd.outputs.size(), std::vector<bool>(td.actions.size()));
  for (std::size_t i = 0; i < cpd.outputs.size(); ++i) {
    const Actuator* a = cpd.find_actuator(cpd.outputs[i].intended_for);
    for (std::size_t k = 0; k < td.actions.size(); ++k)
      adj[i][k] = a != nullptr && actuator_fits(*a, td.actions[k], t, o);
  }
  return adj;
}

// Shared by the input and output rules: bind every CP-side vertex injectively.
template <typename Io, typename Affordance>
RuleResult bind_all(const std::vector<Io>& ios, const std::vector<Affordance>& affordances,
                    const std::vector<std::vector<bool>>& adj, Binding::Kind kind,
                    const std::string& rule, const char* noun) {
  RuleResult r;
  for (std::size_t i = 0; i < ios.size(); ++i) {
    if (std::none_of(adj[i].begin(), adj[i].end(), [](bool b) { return b; })) {
      r.failure = FailureReason{rule, ios[i].id,
                                "no " + std::string(noun) + " satisfies '" + ios[i].intended_for + "'"};
      return r;
    }
  }
  const std::vector<int> m = max_bipartite_matching(adj, affordances.size());
  for (std::size_t i = 0; i < ios.size(); ++i) {
    if (m[i] < 0) {
      r.failure = FailureReason{rule, ios[i].id,
                                "every " + std::string(noun) + " satisfying '" + ios[i].intended_for +
                                    "' is already bound to another " +
                                    (kind == Binding::Kind::kInput ? "input" : "output")};
      r.bindings.clear();
      return r;
    }
    r.bindings.push_back({kind, ios[i].id, affordances[static_cast<std::size_t>(m[i])].name});
  }
  r.satisfied = true;
  return r;
}

std::size_t specificity(const ControlProgramDesc& cpd, const Taxonomy& t) {
  std::size_t best = 0;
  for (const SystemDesign& asd : cpd.asds)
    if (t.contains(asd.system_type)) best = std::max(best, t.depth(asd.system_type));
  return best;
}

std::string kind_name(Binding::Kind k) {
  switch (k) {
    case Binding::Kind::kInput: return "input";
    case Binding::Kind::kOutput: return "output";
    case Binding::Kind::kParameter: return "parameter";
  }
  return "";
}

Json report_json(const MatchReport& r) {
  Json j = Json::object();
  j["tdId"] = r.td_id;
  j["cpdId"] = r.cpd_id;
  j["systemCompatible"] = r.system_compatible;
  j["processCompatible"] = r.process_compatible;
  j["inputCompatible"] = r.input_compatible;
  j["outputCompatible"] = r.output_compatible;
  j["actionCoverage"] = r.action_coverage;
  j["specCompatible"] = r.spec_compatible;
  j["overall"] = r.overall;
  Json b = Json::array();
  for (const Binding& x : r.bindings)
    b.push_back(Json{{"kind", kind_name(x.kind)}, {"cp", x.cp_id}, {"td", x.td_name}});
  j["bindings"] = std::move(b);
  Json f = Json::array();
  for (const FailureReason& x : r.failure_reasons)
    f.push_back(Json{{"rule", x.rule}, {"subject", x.subject}, {"message", x.message}});
  j["failureReasons"] = std::move(f);
  return j;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

bool is_a(const Taxonomy& taxonomy, const Iri& sub, const Iri& super) {
  if (sub == super) return true;
  if (!taxonomy.contains(sub) || !taxonomy.contains(super)) return false;
  return taxonomy.subclass_of(sub, super);
}

bool equivalent(const ProcessVariable& a, const ProcessVariable& b, const Taxonomy& taxonomy,
                const MatchOptions& options) {
  if (a.stuff != b.stuff || a.quantity_kind != b.quantity_kind) return false;
  if (a.position != b.position) return false;
  if (options.compare_component && a.component_type && b.component_type &&
      !related(taxonomy, *a.component_type, *b.component_type))
    return false;
  return true;
}

bool satisfies(const ProcessVariable& required, const ProcessVariable& offered,
               const Taxonomy& taxonomy, const MatchOptions& options) {
  if (required.stuff != offered.stuff || required.quantity_kind != offered.quantity_kind) return false;
  if (required.position && required.position != offered.position) return false;
  if (options.compare_component && required.component_type &&
      (!offered.component_type || !related(taxonomy, *required.component_type, *offered.component_type)))
    return false;
  return true;
}

bool sensor_fits(const Sensor& required, const PropertyAffordance& offered,
                 const Taxonomy& taxonomy, const MatchOptions& options) {
  if (required.type &&
      (!offered.sensor_class || !is_a(taxonomy, *required.type, *offered.sensor_class)))
    return false;
  if (required.observes &&
      (!offered.observes || !satisfies(*required.observes, *offered.observes, taxonomy, options)))
    return false;
  return true;
}

bool actuator_fits(const Actuator& required, const ActionAffordance& offered,
                   const Taxonomy& taxonomy, const MatchOptions& options) {
  if (required.type &&
      (!offered.actuator_class || !is_a(taxonomy, *required.type, *offered.actuator_class)))
    return false;
  if (required.manipulates &&
      (!offered.manipulates ||
       !satisfies(*required.manipulates, *offered.manipulates, taxonomy, options)))
    return false;
  for (const ProcessVariable& want : required.affects) {
    const bool found = std::any_of(offered.affects.begin(), offered.affects.end(), [&](const auto& v) {
      return satisfies(want, v, taxonomy, options);
    });
    if (!found) return false;
  }
  return true;
}

std::vector<int> max_bipartite_matching(const std::vector<std::vector<bool>>& adjacency,
                                        std::size_t right_count) {
  std::vector<int> right_of_left(adjacency.size(), -1);
  std::vector<int> left_of_right(right_count, -1);
  std::vector<char> visited(right_count);
  for (std::size_t l = 0; l < adjacency.size(); ++l) {
    std::fill(visited.begin(), visited.end(), 0);
    try_augment(l, adjacency, right_of_left, left_of_right, visited);
  }
  return right_of_left;
}

bool is_system_compatible(const ControlProgramDesc& cpd, const ThingDescription& td,
                          const Taxonomy& taxonomy) {
  return !compatible_asds(cpd, td, taxonomy).empty();
}

bool is_process_compatible(const ControlProgramDesc& cpd, const ThingDescription& td,
                           const Taxonomy& taxonomy) {
  std::vector<const SystemDesign*> asds = compatible_asds(cpd, td, taxonomy);
  if (asds.empty())
    for (const SystemDesign& asd : cpd.asds) asds.push_back(&asd);
  for (const SystemDesign* asd : asds) {
    if (!asd->manages) return true;
    if (td.manages_class && is_a(taxonomy, asd->manages->type, *td.manages_class)) return true;
  }
  return false;
}

RuleResult is_input_compatible(const ControlProgramDesc& cpd, const ThingDescription& td,
                               const Taxonomy& taxonomy, const MatchOptions& options) {
  std::vector<std::vector<bool>> adj(cpd.inputs.size(), std::vector<bool>(td.properties.size()));
  for (std::size_t i = 0; i < cpd.inputs.size(); ++i) {
    const Sensor* s = cpd.find_sensor(cpd.inputs[i].intended_for);
    for (std::size_t k = 0; k < td.properties.size(); ++k)
      adj[i][k] = s != nullptr && sensor_fits(*s, td.properties[k], taxonomy, options);
  }
  return bind_all(cpd.inputs, td.properties, adj, Binding::Kind::kInput, "input", "property");
}

RuleResult is_output_compatible(const ControlProgramDesc& cpd, const ThingDescription& td,
                                const Taxonomy& taxonomy, const MatchOptions& options) {
  return bind_all(cpd.outputs, td.actions, output_graph(cpd, td, taxonomy, options),
                  Binding::Kind::kOutput, "output", "action");
}

bool has_action_coverage(const ControlProgramDesc& cpd, const ThingDescription& td,
                         const Taxonomy& taxonomy, const MatchOptions& options) {
  const auto adj = output_graph(cpd, td, taxonomy, options);
  // Transpose: actions on the left.
  std::vector<std::vector<bool>> t(td.actions.size(), std::vector<bool>(cpd.outputs.size()));
  for (std::size_t i = 0; i < cpd.outputs.size(); ++i)
    for (std::size_t k = 0; k < td.actions.size(); ++k) t[k][i] = adj[i][k];
  const auto m = max_bipartite_matching(t, cpd.outputs.size());
  return std::all_of(m.begin(), m.end(), [](int x) { return x >= 0; });
}

RuleResult is_spec_compatible(const ControlProgramDesc& cpd, const ThingDescription& td,
                              const Taxonomy& taxonomy, const MatchOptions& options) {
  RuleResult r;
  for (const CpParameter& p : cpd.parameters) {
    auto it = std::find_if(td.specifications.begin(), td.specifications.end(), [&](const auto& d) {
      return d.has_value() &&
             satisfies(p.specified_by.specified_variable, d.specified_variable, taxonomy, options);
    });
    if (it == td.specifications.end()) {
      r.failure = FailureReason{"specification", p.id, "no specification with a value satisfies the parameter"};
      r.bindings.clear();
      return r;
    }
    r.bindings.push_back({Binding::Kind::kParameter, p.id, it->id});
  }
  r.satisfied = true;
  return r;
}

MatchReport match(const ThingDescription& td, const ControlProgramDesc& cpd,
                  const Taxonomy& taxonomy, const MatchOptions& options) {
  MatchReport r;
  r.td_id = td.id;
  r.cpd_id = cpd.id;

  r.system_compatible = is_system_compatible(cpd, td, taxonomy);
  if (!r.system_compatible)
    r.failure_reasons.push_back(
        {"system", td.id,
         td.thing_class ? "no ASD system class is a subclass of " + td.thing_class->curie()
                        : "TD states no system class"});

  r.process_compatible = is_process_compatible(cpd, td, taxonomy);
  if (!r.process_compatible)
    r.failure_reasons.push_back(
        {"process", td.id,
         td.manages_class ? "required process is not a subclass of " + td.manages_class->curie()
                          : "TD states no managed process"});

  auto take = [&](RuleResult res) {
    if (res.failure) r.failure_reasons.push_back(*res.failure);
    r.bindings.insert(r.bindings.end(), res.bindings.begin(), res.bindings.end());
    return res.satisfied;
  };
  r.input_compatible = take(is_input_compatible(cpd, td, taxonomy, options));
  r.output_compatible = take(is_output_compatible(cpd, td, taxonomy, options));

  r.action_coverage = has_action_coverage(cpd, td, taxonomy, options);
  if (!r.action_coverage) {
    // Name the first action that no output can drive, if there is one.
    const auto adj = output_graph(cpd, td, taxonomy, options);
    std::string subject = td.id;
    for (std::size_t k = 0; k < td.actions.size(); ++k) {
      bool driven = false;
      for (const auto& row : adj) driven = driven || row[k];
      if (!driven) {
        subject = td.actions[k].name;
        break;
      }
    }
    r.failure_reasons.push_back({"coverage", subject, "not every TD action is driven by a CP output"});
  }

  r.spec_compatible = take(is_spec_compatible(cpd, td, taxonomy, options));
  r.overall = r.system_compatible && r.process_compatible && r.input_compatible &&
              r.output_compatible && r.action_coverage && r.spec_compatible;
  return r;
}

std::string_view outcome_name(MatchOutcome outcome) {
  switch (outcome) {
    case MatchOutcome::kUnique: return "unique";
    case MatchOutcome::kMulti: return "multi";
    case MatchOutcome::kNone: return "none";
  }
  return "";
}

MatchMatrix match_all(const std::vector<ThingDescription>& tds,
                      const std::vector<ControlProgramDesc>& cpds, const Taxonomy& taxonomy,
                      const MatchOptions& options) {
  MatchMatrix m;
  for (const ThingDescription& td : tds) m.td_ids.push_back(td.id);
  for (const ControlProgramDesc& c : cpds) m.cpd_ids.push_back(c.id);
  m.reports.reserve(tds.size() * cpds.size());
  std::vector<std::size_t> spec(cpds.size());
  for (std::size_t c = 0; c < cpds.size(); ++c) spec[c] = specificity(cpds[c], taxonomy);

  for (const ThingDescription& td : tds) {
    std::vector<std::size_t> hits;
    for (std::size_t c = 0; c < cpds.size(); ++c) {
      m.reports.push_back(match(td, cpds[c], taxonomy, options));
      if (m.reports.back().overall) hits.push_back(c);
    }
    std::stable_sort(hits.begin(), hits.end(), [&](std::size_t a, std::size_t b) {
      if (spec[a] != spec[b]) return spec[a] > spec[b];
      return cpds[a].id < cpds[b].id;
    });
    TdSummary s;
    s.td_id = td.id;
    s.outcome = hits.empty() ? MatchOutcome::kNone
                : hits.size() == 1 ? MatchOutcome::kUnique
                                   : MatchOutcome::kMulti;
    for (std::size_t c : hits) s.matches.push_back(cpds[c].id);
    m.summaries.push_back(std::move(s));
  }
  return m;
}

std::string report_to_json(const MatchReport& report) { return report_json(report).dump(2) + "\n"; }

std::string reports_to_json(const std::vector<MatchReport>& reports) {
  Json arr = Json::array();
  for (const MatchReport& r : reports) arr.push_back(report_json(r));
  return arr.dump(2) + "\n";
}

std::string summaries_to_json(const std::vector<TdSummary>& summaries) {
  Json arr = Json::array();
  for (const TdSummary& s : summaries)
    arr.push_back(Json{{"td", s.td_id}, {"outcome", outcome_name(s.outcome)}, {"matches", s.matches}});
  return arr.dump(2) + "\n";
}

std::string render_reports(const std::vector<MatchReport>& reports) {
  std::size_t w = 3, tw = 2;
  for (const MatchReport& r : reports) {
    w = std::max(w, r.cpd_id.size());
    tw = std::max(tw, r.td_id.size());
  }
  auto mark = [](bool b) { return std::string(b ? "yes" : "no"); };
  std::ostringstream out;
  out << pad("TD", tw) << "  " << pad("CPD", w) << "  sys  proc in   out  cov  spec match\n";
  for (const MatchReport& r : reports) {
    out << pad(r.td_id, tw) << "  " << pad(r.cpd_id, w) << "  " << pad(mark(r.system_compatible), 5)
        << pad(mark(r.process_compatible), 5) << pad(mark(r.input_compatible), 5)
        << pad(mark(r.output_compatible), 5) << pad(mark(r.action_coverage), 5)
        << pad(mark(r.spec_compatible), 5) << (r.overall ? "MATCH" : "-") << "\n";
  }
  for (const MatchReport& r : reports) {
    if (r.overall) {
      for (const Binding& b : r.bindings)
        out << "  " << r.td_id << " / " << r.cpd_id << " " << kind_name(b.kind) << " " << b.cp_id << " -> " << b.td_name
            << "\n";
    } else if (!r.failure_reasons.empty()) {
      const FailureReason& f = r.failure_reasons.front();
      out << "  " << r.td_id << " / " << r.cpd_id << " fails " << f.rule << " (" << f.subject << "): " << f.message << "\n";
    }
  }
  return out.str();
}

std::string render_summaries(const std::vector<TdSummary>& summaries) {
  std::size_t w = 2;
  for (const TdSummary& s : summaries) w = std::max(w, s.td_id.size());
  std::ostringstream out;
  out << pad("TD", w) << "  outcome  matches\n";
  std::size_t counts[3] = {0, 0, 0};
  for (const TdSummary& s : summaries) {
    ++counts[static_cast<int>(s.outcome)];
    out << pad(s.td_id, w) << "  " << pad(std::string(outcome_name(s.outcome)), 7) << "  ";
    for (std::size_t i = 0; i < s.matches.size(); ++i) out << (i ? ", " : "") << s.matches[i];
    out << "\n";
  }
  out << "unique " << counts[0] << ", multi " << counts[1] << ", none " << counts[2] << "\n";
  return out.str();
}

}  // namespace phydit
