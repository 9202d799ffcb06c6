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


#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "jrsp/channels.hpp"
#include "jrsp/corrections.hpp"

using namespace jrsp;

namespace {

int oracle_id(ProtocolId p) { return static_cast<int>(p) + 1; }

}  // namespace

TEST_CASE("protocol names") {
  CHECK(parse_protocol("P2") == ProtocolId::P2);
  CHECK(to_string(ProtocolId::P3) == "p3");
  CHECK_THROWS_WITH(parse_protocol("p4"), doctest::Contains("unknown protocol"));
  CHECK(protocol_arity(ProtocolId::P1) == 1);
  CHECK(protocol_arity(ProtocolId::P3) == 2);
}

TEST_CASE("resource states") {
  const PureState g = ghz_state({1, 2, 3});
  CHECK(g.nonzero_count() == 4);
  for (int t = 0; t < 4; ++t) CHECK(g[static_cast<std::size_t>(21 * t)] == Amplitude(0.5));
  const PureState e = epr_state({5, 6});
  for (int t = 0; t < 4; ++t) CHECK(e[static_cast<std::size_t>(5 * t)] == Amplitude(0.5));
  CHECK(e.is_normalized());
}

TEST_CASE("channel ownership") {
  const ChannelSpec c1 = build_channel(ProtocolId::P1);
  CHECK(c1.group(Party::Alice1).labels == std::vector<int>{1});
  CHECK(c1.group(Party::Alice2).labels == std::vector<int>{2});
  CHECK(c1.bob_labels() == std::vector<int>{3});
  const ChannelSpec c2 = build_channel(ProtocolId::P2);
  CHECK(c2.group(Party::Alice1).labels == std::vector<int>{1, 4});
  CHECK(c2.group(Party::Alice2).labels == std::vector<int>{2, 5});
  CHECK(c2.bob_labels() == std::vector<int>{3, 6});
  const ChannelSpec c3 = build_channel(ProtocolId::P3);
  CHECK(c3.group(Party::Alice1).labels == std::vector<int>{1, 3});
  CHECK(c3.group(Party::Alice2).labels == std::vector<int>{2, 5});
  CHECK(c3.bob_labels() == std::vector<int>{4, 6});
  CHECK(c3.state.is_normalized());
  CHECK(c3.state.nonzero_count() == 64);
}

TEST_CASE("every branch equals the brute-force projection") {
  std::mt19937_64 rng(31);
  for (ProtocolId p : kAllProtocols) {
    const oracle::Share s1 = oracle::random_share(rng);
    const oracle::Share s2 = oracle::random_share(rng);
    const ChannelSpec channel = build_channel(p);
    const auto [b1, b2] = sender_bases(channel, testing::share(s1, 1), testing::share(s2, 2));
    const auto branches = enumerate_branches(channel, b1.vectors(), b2.vectors());
    const int n = oracle::outcomes(oracle_id(p));
    REQUIRE(branches.size() == static_cast<std::size_t>(n * n));
    double worst = 0.0;
    double total = 0.0;
    for (int a1 = 0; a1 < n; ++a1)
      for (int a2 = 0; a2 < n; ++a2) {
        const auto& pr = branches[static_cast<std::size_t>(a1 * n + a2)];
        const oracle::Vec expect = oracle::branch(oracle_id(p), s1, s2, a1, a2);
        worst = std::max(worst, testing::max_diff(testing::vec(pr.residual), expect));
        CHECK(pr.probability == doctest::Approx(oracle::norm2(expect)).epsilon(1e-12));
        total += pr.probability;
      }
    CHECK(worst < 1e-14);
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("measurement order and thread count do not change any branch") {
  std::mt19937_64 rng(32);
  const ShareVector s1 = random_generic_share(rng, 1);
  const ShareVector s2 = random_generic_share(rng, 2);
  for (ProtocolId p : kAllProtocols) {
    const ChannelSpec channel = build_channel(p);
    const auto [b1, b2] = sender_bases(channel, s1, s2);
    const auto ref = enumerate_branches(channel, b1.vectors(), b2.vectors());
    const auto par = enumerate_branches(channel, b1.vectors(), b2.vectors(), MeasurementOrder::Alice1First, 4);
    const auto rev = enumerate_branches(channel, b1.vectors(), b2.vectors(), MeasurementOrder::Alice2First, 3);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(testing::vec(ref[i].residual) == testing::vec(par[i].residual));
      CHECK(testing::max_diff(testing::vec(ref[i].residual), testing::vec(rev[i].residual)) < 1e-15);
    }
  }
}

TEST_CASE("collapse_branch agrees with enumerate_branches") {
  std::mt19937_64 rng(33);
  const ShareVector s1 = random_generic_share(rng, 1);
  const ShareVector s2 = random_generic_share(rng, 2);
  const ChannelSpec channel = build_channel(ProtocolId::P2);
  const auto [b1, b2] = sender_bases(channel, s1, s2);
  const auto all = enumerate_branches(channel, b1.vectors(), b2.vectors());
  const Projection one = collapse_branch(channel, build_mobv2(s1).vector(7), build_mobv2(s2).vector(7));
  CHECK(testing::max_diff(testing::vec(one.residual), testing::vec(all[7 * 16 + 7].residual)) < 1e-15);
}
