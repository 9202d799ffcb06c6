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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "jrsp/channels.hpp"
#include "jrsp/corrections.hpp"
#include "jrsp/mobv_bases.hpp"
#include "jrsp/target.hpp"

namespace jrsp {

enum class RunMode { Enumerate, Sample };

struct RunConfig {
  ProtocolId protocol;
  ShareVector share1;
  ShareVector share2;
  RunMode mode = RunMode::Enumerate;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  Provenance table_provenance = Provenance::Derived;
  MeasurementOrder order = MeasurementOrder::Alice1First;
  /// 1 = sequential, 0 = one worker per hardware thread. Output never depends on it.
  unsigned threads = 1;
};

struct OutcomeRecord {
  OutcomeKey outcome;
  double probability;
  /// Normalized Bob state; all zeros for a zero-probability outcome.
  PureState collapsed;
  bool success;
  std::optional<CorrectionRule> correction;
  /// Success: fidelity after the table's correction. Failure: of the uncorrected state.
  double post_fidelity;
  /// Highest fidelity any assignment of U0..U7 reaches on this branch.
  double best_fidelity;
};

struct ProtocolReport {
  ProtocolId protocol;
  ShareVector share1;
  ShareVector share2;
  TargetState target;
  std::vector<int> bob_labels;
  std::vector<OutcomeRecord> records;  ///< lexicographic in outcome key
  double success_probability;
  int classical_cost_bits;
  Provenance table_provenance;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> shots;
  std::optional<std::map<OutcomeKey, std::uint64_t>> empirical_counts;

  int arity() const noexcept { return protocol_arity(protocol); }
  const OutcomeRecord& record(OutcomeKey key) const;
};

/// Correction table selected by provenance: the published transcription or
/// the search-derived table over reference_shares().
const CorrectionTable& selected_table(ProtocolId protocol, Provenance provenance);

/// Exact distribution over every joint outcome (16 for P1, 256 otherwise).
ProtocolReport enumerate_outcomes(const RunConfig& config);

/// Exact report plus `shots` draws by inverse CDF over the lexicographic
/// outcome order. Shot i draws from a generator seeded with (seed, i).
ProtocolReport run_sampled(const RunConfig& config);

/// Sum over senders of log2(number of announced basis vectors).
int classical_cost(ProtocolId protocol);

}  // namespace jrsp
