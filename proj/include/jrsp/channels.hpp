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

#include <array>
#include <map>
#include <string_view>
#include <vector>

#include "jrsp/qudit_linalg.hpp"

namespace jrsp {

/// P1: one qudit over one GHZ triple. P2: two qudits over two GHZ triples.
/// P3: two qudits over three EPR pairs.
enum class ProtocolId { P1, P2, P3 };

inline constexpr std::array<ProtocolId, 3> kAllProtocols{ProtocolId::P1, ProtocolId::P2, ProtocolId::P3};

/// "p1", "p2", "p3".
std::string_view to_string(ProtocolId protocol) noexcept;
/// Case-insensitive; throws Error("unknown protocol ...").
ProtocolId parse_protocol(std::string_view text);

/// Number of qudits each sender measures, equal to the number Bob holds.
int protocol_arity(ProtocolId protocol) noexcept;

enum class Party { Alice1, Alice2, Bob };

std::string_view to_string(Party party) noexcept;

struct MeasuredGroup {
  Party party;
  std::vector<int> labels;
};

struct ChannelSpec {
  ProtocolId protocol;
  PureState state;
  std::map<int, Party> ownership;
  std::vector<MeasuredGroup> measured_groups;  ///< Alice1 first, then Alice2

  const MeasuredGroup& group(Party party) const;
  /// Bob's labels in ascending order.
  std::vector<int> bob_labels() const;
};

/// (1/2) sum_j |jjj>.
PureState ghz_state(std::array<int, 3> labels);
/// (1/2) sum_j |jj>.
PureState epr_state(std::array<int, 2> labels);

ChannelSpec build_channel(ProtocolId protocol);

enum class MeasurementOrder { Alice1First, Alice2First };

/// Projects Alice1's group onto `alice1_vector` and Alice2's group onto
/// `alice2_vector` (positionally relabeled onto the group labels). The
/// residual lives on Bob's labels in channel order.
Projection collapse_branch(const ChannelSpec& channel, const PureState& alice1_vector,
                           const PureState& alice2_vector,
                           MeasurementOrder order = MeasurementOrder::Alice1First);

/// All joint branches, indexed alice1_index * basis2.size() + alice2_index.
/// The first sender's projection is shared across the second sender's outcomes.
std::vector<Projection> enumerate_branches(const ChannelSpec& channel, const std::vector<PureState>& alice1_basis,
                                           const std::vector<PureState>& alice2_basis,
                                           MeasurementOrder order = MeasurementOrder::Alice1First,
                                           unsigned threads = 1);

}  // namespace jrsp
