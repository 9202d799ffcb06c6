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

// Bob's correction alphabet U0..U7 and outcome -> correction tables.
//
// All eight unitaries are permutation matrices acting by columns: U|t> is
// column t of the matrix. U0..U3 are the block forms diag(I,I),
// diag(X,X), antidiag(I,I), antidiag(X,X) with X the 2x2 swap; U4..U7 are
// the explicit 4x4 permutations of the two-qudit protocols.

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jrsp/channels.hpp"
#include "jrsp/mobv_bases.hpp"
#include "jrsp/qudit_linalg.hpp"

namespace jrsp {

inline constexpr int kCorrectionCount = 8;

struct CorrectionUnitary {
  int index;
  LocalOperator op;
  /// image[t] = s such that U|t> = |s>.
  std::array<int, 4> image;
};

/// Throws Error for i outside 0..7.
const CorrectionUnitary& correction_unitary(int i);

/// A joint announcement: each sender's flat basis index
/// (j for single-qudit bases, 4*g + h for two-qudit bases).
struct OutcomeKey {
  int alice1 = 0;
  int alice2 = 0;
  auto operator<=>(const OutcomeKey&) const = default;
};

/// "l,m" for arity 1, "gh,mn" for arity 2.
std::string format_outcome(OutcomeKey key, int arity);
OutcomeKey parse_outcome(std::string_view text, int arity);

struct BobOp {
  int label;
  int unitary;
  bool operator==(const BobOp&) const = default;
};

using BobOps = std::vector<BobOp>;

/// "(U1)3" or "(U2)4 (U6)6".
std::string format_ops(const BobOps& ops);

struct CorrectionRule {
  OutcomeKey outcome;
  BobOps bob_ops;
  bool operator==(const CorrectionRule&) const = default;
};

enum class Provenance { Transcribed, Derived };

std::string_view to_string(Provenance provenance) noexcept;
Provenance parse_provenance(std::string_view text);

struct CorrectionTable {
  ProtocolId protocol;
  Provenance provenance;
  std::map<OutcomeKey, CorrectionRule> rules;
  std::vector<std::string> warnings;

  const CorrectionRule* find(OutcomeKey key) const;
};

/// The published outcome -> correction tables, stored verbatim.
CorrectionTable published_table(ProtocolId protocol);

PureState apply_correction(const BobOps& ops, const PureState& state);

struct CorrectionSearch {
  BobOps ops;
  double fidelity;
};

/// Best fidelity with `target` over every assignment of U0..U7 to the Bob
/// labels; ties keep the lexicographically first assignment.
CorrectionSearch best_correction(const PureState& collapsed, const PureState& target,
                                 std::span<const int> bob_labels);

/// First assignment (lexicographic in unitary indices) that reaches
/// fidelity 1 within kFidelityTolerance, or nullopt.
std::optional<BobOps> search_correction(const PureState& collapsed, const PureState& target,
                                        std::span<const int> bob_labels);

/// Sender bases for a protocol, relabeled onto the measured groups.
std::pair<MeasurementBasis, MeasurementBasis> sender_bases(const ChannelSpec& channel, const ShareVector& share1,
                                                           const ShareVector& share2);

/// Runs the exhaustive search for every joint outcome. Non-generic shares
/// attach a warning since accidental extra successes become possible.
CorrectionTable regenerate_table(ProtocolId protocol, const ShareVector& share1, const ShareVector& share2,
                                 unsigned threads = 1);

/// Fixed generic share pair used when a table must not depend on run inputs.
std::pair<ShareVector, ShareVector> reference_shares();

/// regenerate_table over reference_shares(), computed once per protocol.
const CorrectionTable& reference_derived_table(ProtocolId protocol);

struct TableDiffEntry {
  OutcomeKey outcome;
  std::optional<BobOps> derived;
  std::optional<BobOps> transcribed;
  bool operator==(const TableDiffEntry&) const = default;
};

/// Outcomes whose rule differs or exists in only one table, in key order.
std::vector<TableDiffEntry> diff_tables(const CorrectionTable& derived, const CorrectionTable& transcribed);

}  // namespace jrsp
