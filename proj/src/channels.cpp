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

#include "jrsp/channels.hpp"

#include "jrsp/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace jrsp {

std::string_view to_string(ProtocolId protocol) noexcept {
  switch (protocol) {
    case ProtocolId::P1: return "p1";
    case ProtocolId::P2: return "p2";
    case ProtocolId::P3: return "p3";
  }
  return "?";
}

ProtocolId parse_protocol(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (ProtocolId p : kAllProtocols)
    if (lower == to_string(p)) return p;
  throw Error("unknown protocol '" + std::string(text) + "' (expected p1, p2 or p3)");
}

int protocol_arity(ProtocolId protocol) noexcept { return protocol == ProtocolId::P1 ? 1 : 2; }

std::string_view to_string(Party party) noexcept {
  switch (party) {
    case Party::Alice1: return "alice1";
    case Party::Alice2: return "alice2";
    case Party::Bob: return "bob";
  }
  return "?";
}

const MeasuredGroup& ChannelSpec::group(Party party) const {
  for (const auto& g : measured_groups)
    if (g.party == party) return g;
  throw Error("party has no measured group");
}

std::vector<int> ChannelSpec::bob_labels() const {
  std::vector<int> bob;
  for (const auto& [label, party] : ownership)
    if (party == Party::Bob) bob.push_back(label);
  return bob;
}

PureState ghz_state(std::array<int, 3> labels) {
  std::vector<Amplitude> amps(64);
  for (int j = 0; j < 4; ++j) amps[16 * j + 4 * j + j] = 0.5;
  return PureState(RegisterLayout({labels[0], labels[1], labels[2]}), std::move(amps));
}

PureState epr_state(std::array<int, 2> labels) {
  std::vector<Amplitude> amps(16);
  for (int j = 0; j < 4; ++j) amps[4 * j + j] = 0.5;
  return PureState(RegisterLayout({labels[0], labels[1]}), std::move(amps));
}

ChannelSpec build_channel(ProtocolId protocol) {
  using enum Party;
  switch (protocol) {
    case ProtocolId::P1:
      return ChannelSpec{protocol,
                         ghz_state({1, 2, 3}),
                         {{1, Alice1}, {2, Alice2}, {3, Bob}},
                         {{Alice1, {1}}, {Alice2, {2}}}};
    case ProtocolId::P2: {
      const std::array parts{ghz_state({1, 2, 3}), ghz_state({4, 5, 6})};
      return ChannelSpec{protocol,
                         tensor_product(parts),
                         {{1, Alice1}, {4, Alice1}, {2, Alice2}, {5, Alice2}, {3, Bob}, {6, Bob}},
                         {{Alice1, {1, 4}}, {Alice2, {2, 5}}}};
    }
    case ProtocolId::P3: {
      const std::array parts{epr_state({1, 2}), epr_state({3, 4}), epr_state({5, 6})};
      return ChannelSpec{protocol,
                         tensor_product(parts),
                         {{1, Alice1}, {3, Alice1}, {2, Alice2}, {5, Alice2}, {4, Bob}, {6, Bob}},
                         {{Alice1, {1, 3}}, {Alice2, {2, 5}}}};
    }
  }
  throw Error("unknown protocol");
}

Projection collapse_branch(const ChannelSpec& channel, const PureState& alice1_vector,
                           const PureState& alice2_vector, MeasurementOrder order) {
  const auto& g1 = channel.group(Party::Alice1).labels;
  const auto& g2 = channel.group(Party::Alice2).labels;
  const PureState v1 = alice1_vector.relabeled(g1);
  const PureState v2 = alice2_vector.relabeled(g2);
  if (order == MeasurementOrder::Alice1First) {
    Projection first = project(channel.state, g1, v1);
    return project(first.residual, g2, v2);
  }
  Projection first = project(channel.state, g2, v2);
  return project(first.residual, g1, v1);
}

std::vector<Projection> enumerate_branches(const ChannelSpec& channel, const std::vector<PureState>& alice1_basis,
                                           const std::vector<PureState>& alice2_basis, MeasurementOrder order,
                                           unsigned threads) {
  const auto& g1 = channel.group(Party::Alice1).labels;
  const auto& g2 = channel.group(Party::Alice2).labels;
  const bool alice1_first = order == MeasurementOrder::Alice1First;
  const auto& outer_basis = alice1_first ? alice1_basis : alice2_basis;
  const auto& inner_basis = alice1_first ? alice2_basis : alice1_basis;
  const auto& outer_labels = alice1_first ? g1 : g2;
  const auto& inner_labels = alice1_first ? g2 : g1;

  std::vector<PureState> inner_vectors;
  inner_vectors.reserve(inner_basis.size());
  for (const auto& v : inner_basis) inner_vectors.push_back(v.relabeled(inner_labels));

  const std::size_t n1 = alice1_basis.size();
  const std::size_t n2 = alice2_basis.size();
  std::vector<Projection> out(n1 * n2, Projection{PureState(RegisterLayout{}, {Amplitude{}}), 0.0});
  parallel_for(outer_basis.size(), threads, [&](std::size_t o) {
    const Projection first = project(channel.state, outer_labels, outer_basis[o].relabeled(outer_labels));
    for (std::size_t i = 0; i < inner_vectors.size(); ++i) {
      const std::size_t slot = alice1_first ? o * n2 + i : i * n2 + o;
      out[slot] = project(first.residual, inner_labels, inner_vectors[i]);
    }
  });
  return out;
}

}  // namespace jrsp
