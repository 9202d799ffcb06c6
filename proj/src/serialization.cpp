// Copyright 2026 The jrsp4 Authors
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


#include "jrsp/serialization.hpp"

#include <cstdio>

#include "json.hpp"

namespace jrsp {

namespace {

using nlohmann::ordered_json;

ordered_json amplitudes_json(const PureState& state) {
  ordered_json out = ordered_json::array();
  for (const Amplitude a : state.amplitudes()) out.push_back({a.real(), a.imag()});
  return out;
}

ordered_json ops_json(const BobOps& ops) {
  ordered_json out = ordered_json::array();
  for (const auto& op : ops) out.push_back({op.label, op.unitary});
  return out;
}

ordered_json table_json(const CorrectionTable& table) {
  const int arity = protocol_arity(table.protocol);
  ordered_json rules = ordered_json::object();
  for (const auto& [key, rule] : table.rules) rules[format_outcome(key, arity)] = ops_json(rule.bob_ops);
  return ordered_json{{"protocol", to_string(table.protocol)},
                      {"provenance", to_string(table.provenance)},
                      {"rules", std::move(rules)},
                      {"warnings", table.warnings}};
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string report_json(const ProtocolReport& report) {
  const int arity = report.arity();
  ordered_json records = ordered_json::array();
  for (const auto& r : report.records) {
    records.push_back(ordered_json{
        {"outcome", format_outcome(r.outcome, arity)},
        {"probability", r.probability},
        {"success", r.success},
        {"correction", r.correction ? ops_json(r.correction->bob_ops) : ordered_json(nullptr)},
        {"fidelity", r.post_fidelity},
        {"best_fidelity", r.best_fidelity},
        {"collapsed", amplitudes_json(r.collapsed)},
    });
  }
  ordered_json counts(nullptr);
  if (report.empirical_counts) {
    counts = ordered_json::object();
    for (const auto& [key, n] : *report.empirical_counts) counts[format_outcome(key, arity)] = n;
  }
  const ordered_json doc{
      {"protocol", to_string(report.protocol)},
      {"shares", {{"share1", report.share1.components()}, {"share2", report.share2.components()}}},
      {"target",
       {{"bob_labels", report.bob_labels},
        {"amplitudes", amplitudes_json(report.target.amplitudes)},
        {"product_norm", report.target.product_norm}}},
      {"records", std::move(records)},
      {"success_probability", report.success_probability},
      {"classical_cost_bits", report.classical_cost_bits},
      {"table_provenance", to_string(report.table_provenance)},
      {"seed", report.seed ? ordered_json(*report.seed) : ordered_json(nullptr)},
      {"shots", report.shots ? ordered_json(*report.shots) : ordered_json(nullptr)},
      {"empirical_counts", std::move(counts)},
  };
  return dump(doc);
}

std::string report_csv(const ProtocolReport& report) {
  std::string out = "outcome_key,probability,success,correction,fidelity\n";
  for (const auto& r : report.records) {
    out += '"' + format_outcome(r.outcome, report.arity()) + "\",";
    out += g17(r.probability) + ',';
    out += r.success ? "true," : "false,";
    if (r.correction) out += format_ops(r.correction->bob_ops);
    out += ',' + g17(r.post_fidelity) + '\n';
  }
  return out;
}

std::string tables_json(const CorrectionTable& derived, const CorrectionTable& transcribed) {
  const int arity = protocol_arity(derived.protocol);
  ordered_json diff = ordered_json::array();
  for (const auto& e : diff_tables(derived, transcribed)) {
    diff.push_back(ordered_json{{"outcome", format_outcome(e.outcome, arity)},
                                {"derived", e.derived ? ops_json(*e.derived) : ordered_json(nullptr)},
                                {"transcribed", e.transcribed ? ops_json(*e.transcribed) : ordered_json(nullptr)}});
  }
  const ordered_json doc{{"protocol", to_string(derived.protocol)},
                         {"transcribed", table_json(transcribed)},
                         {"derived", table_json(derived)},
                         {"diff", std::move(diff)}};
  return dump(doc);
}

std::string audit_json(const AuditReport& audit) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : audit.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  ordered_json discrepancies = ordered_json::array();
  for (const auto& d : audit.discrepancies) {
    discrepancies.push_back(ordered_json{{"location", d.location},
                                         {"paper_value", d.paper_value},
                                         {"derived_value", d.derived_value},
                                         {"severity", to_string(d.severity)}});
  }
  const ordered_json doc{{"seed", audit.seed},
                         {"share_draws", audit.share_draws},
                         {"checks", std::move(checks)},
                         {"discrepancies", std::move(discrepancies)},
                         {"warnings", audit.warnings}};
  return dump(doc);
}

}  // namespace jrsp
