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

// Independent re-derivation of the published branch decompositions, group
// states and correction tables.
//
// Published branch displays are stored as text in a small coefficient
// language and evaluated numerically against direct projections of the
// channel:
//
//     term    := ('+' | '-') factor+ '|' ket '>'
//     factor  := letter             product of both shares' components (a = a1*a2)
//              | letter ('1'|'2')   one sender's component
//     letter  := 'a' | 'b' | 'c' | 'd'   (components 0..3)
//     ket     := digit+             computational ket on Bob's particles
//              | 'L' digit 'j'      pair ket |i, i+j mod 4> for group index j
//
// Derived values in discrepancies are produced by fitting the computed
// branch back into the same language, never typed in.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jrsp/channels.hpp"
#include "jrsp/corrections.hpp"
#include "jrsp/mobv_bases.hpp"

namespace jrsp {

enum class Severity { TypoSuspected, Unresolved };

std::string_view to_string(Severity severity) noexcept;

struct Discrepancy {
  std::string location;
  std::string paper_value;
  std::string derived_value;
  Severity severity;
  bool operator==(const Discrepancy&) const = default;
};

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct VerificationResult {
  std::vector<Check> checks;
  std::vector<Discrepancy> discrepancies;  ///< sorted by location
  std::vector<std::string> warnings;

  bool all_checks_passed() const noexcept;
  void merge(VerificationResult other);
};

/// Locations of published-text discrepancies confirmed by the oracle and
/// shipped as the repository ledger. Anything else is Unresolved.
std::span<const std::string_view> known_discrepancy_locations();

/// |i, i+j mod 4> on a pair of Bob particles.
struct PairBasisLabel {
  int i;
  int j;
  std::array<int, 2> ket() const noexcept { return {i, (i + j) % 4}; }
};

/// One published sum of two product outcomes sharing a Bob state.
struct GroupState {
  int p;
  int j;
  std::array<OutcomeKey, 2> members;
};

/// The 32 published groups, in print order (p major, j minor).
std::span<const GroupState> published_group_states();

/// Numeric value of a coefficient-language expression on Bob's labels,
/// including `prefactor`. `group_j` resolves 'L' kets.
PureState evaluate_display(std::string_view expression, double prefactor, const ShareVector& share1,
                           const ShareVector& share2, std::vector<int> bob_labels, int group_j = 0);

/// Fits an unnormalized branch `residual / prefactor` back into the
/// coefficient language. `pair_notation` renders kets as |Lij>.
std::string fit_display(const PureState& residual, double prefactor, const ShareVector& share1,
                        const ShareVector& share2, bool pair_notation = false);

/// Displayed branches, term counts and worked examples for one protocol.
VerificationResult verify_decomposition(ProtocolId protocol, const ShareVector& share1, const ShareVector& share2);

/// The 32 group states of the three-pair protocol.
VerificationResult verify_group_states(const ShareVector& share1, const ShareVector& share2);

/// Regenerated table against the published one.
VerificationResult verify_tables(ProtocolId protocol, const ShareVector& share1, const ShareVector& share2,
                                 unsigned threads = 1);

/// Orthonormality and structure of both sender bases.
VerificationResult verify_bases(const ShareVector& share1, const ShareVector& share2);

struct AuditReport {
  std::uint64_t seed;
  int share_draws;
  std::vector<Check> checks;
  std::vector<Discrepancy> discrepancies;  ///< sorted by location
  std::vector<std::string> warnings;

  bool has_unresolved() const noexcept;
};

/// All verifications over `draws` random generic share pairs drawn from
/// `seed`. Ledger instability or a failed check becomes an Unresolved entry.
AuditReport full_audit(std::uint64_t seed, int draws = 20, unsigned threads = 1);

}  // namespace jrsp
