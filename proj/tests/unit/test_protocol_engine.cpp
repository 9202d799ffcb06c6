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
#include "jrsp/protocol_engine.hpp"

using namespace jrsp;

namespace {

RunConfig config(ProtocolId p, const ShareVector& s1, const ShareVector& s2) {
  return RunConfig{p, s1, s2};
}

}  // namespace

TEST_CASE("enumeration probabilities equal the brute-force branch norms") {
  std::mt19937_64 rng(51);
  for (ProtocolId p : kAllProtocols) {
    const oracle::Share s1 = oracle::random_share(rng);
    const oracle::Share s2 = oracle::random_share(rng);
    const ProtocolReport r = enumerate_outcomes(config(p, testing::share(s1, 1), testing::share(s2, 2)));
    const int n = oracle::outcomes(static_cast<int>(p) + 1);
    REQUIRE(r.records.size() == static_cast<std::size_t>(n * n));
    double total = 0.0;
    int successes = 0;
    for (const auto& rec : r.records) {
      const oracle::Vec b = oracle::branch(static_cast<int>(p) + 1, s1, s2, rec.outcome.alice1, rec.outcome.alice2);
      CHECK(rec.probability == doctest::Approx(oracle::norm2(b)).epsilon(1e-12));
      total += rec.probability;
      if (rec.success) {
        ++successes;
        CHECK(rec.post_fidelity >= 1.0 - 1e-10);
      } else if (rec.probability > 0) {
        CHECK(rec.best_fidelity < 1.0 - 1e-6);
      }
    }
    CHECK(std::abs(total - 1.0) < 1e-10);
    CHECK(successes == (p == ProtocolId::P1 ? 4 : (p == ProtocolId::P2 ? 16 : 64)));
  }
}

TEST_CASE("uniform shares succeed with probability one quarter") {
  const ShareVector u1 = parse_share("0.5,0.5,0.5,0.5", 1);
  const ShareVector u2 = parse_share("0.5,0.5,0.5,0.5", 2);
  for (ProtocolId p : kAllProtocols) {
    const ProtocolReport r = enumerate_outcomes(config(p, u1, u2));
    CHECK(r.success_probability == doctest::Approx(0.25).epsilon(1e-12));
  }
  // P1 by hand: four diagonal outcomes of weight 1/16 each.
  const ProtocolReport r1 = enumerate_outcomes(config(ProtocolId::P1, u1, u2));
  for (int j = 0; j < 4; ++j) CHECK(r1.record({j, j}).probability == doctest::Approx(1.0 / 16));
}

TEST_CASE("classical cost") {
  CHECK(classical_cost(ProtocolId::P1) == 4);
  CHECK(classical_cost(ProtocolId::P2) == 8);
  CHECK(classical_cost(ProtocolId::P3) == 8);
}

TEST_CASE("degenerate factorization is rejected") {
  const ShareVector a = parse_share("1,0,0,0", 1);
  const ShareVector b = parse_share("0,1,0,0", 2);
  CHECK_THROWS_WITH(enumerate_outcomes(config(ProtocolId::P1, a, b)), doctest::Contains("degenerate factorization"));
}

TEST_CASE("the transcribed table misroutes outcome 01,01") {
  std::mt19937_64 rng(52);
  RunConfig c = config(ProtocolId::P2, random_generic_share(rng, 1), random_generic_share(rng, 2));
  c.table_provenance = Provenance::Transcribed;
  const ProtocolReport r = enumerate_outcomes(c);
  CHECK(r.table_provenance == Provenance::Transcribed);
  CHECK(r.record(parse_outcome("01,01", 2)).post_fidelity < 1.0 - 1e-6);
  CHECK(r.record(parse_outcome("11,11", 2)).post_fidelity >= 1.0 - 1e-10);
  c.table_provenance = Provenance::Derived;
  CHECK(enumerate_outcomes(c).record(parse_outcome("01,01", 2)).post_fidelity >= 1.0 - 1e-10);
}

TEST_CASE("sampling") {
  std::mt19937_64 rng(53);
  RunConfig c = config(ProtocolId::P3, random_generic_share(rng, 1), random_generic_share(rng, 2));
  c.mode = RunMode::Sample;
  c.seed = 99;
  c.shots = 20000;
  const ProtocolReport a = run_sampled(c);
  c.threads = 8;
  const ProtocolReport b = run_sampled(c);
  REQUIRE(a.empirical_counts);
  CHECK(*a.empirical_counts == *b.empirical_counts);
  CHECK(a.empirical_counts->size() == 256);
  std::uint64_t total = 0;
  std::uint64_t hits = 0;
  for (const auto& [key, n] : *a.empirical_counts) {
    total += n;
    if (a.record(key).success) hits += n;
    if (a.record(key).probability == 0.0) CHECK(n == 0);
  }
  CHECK(total == 20000);
  // Binomial with the exact success probability: within five standard deviations.
  const double p = a.success_probability;
  CHECK(std::abs(static_cast<double>(hits) / 20000 - p) < 5 * std::sqrt(p * (1 - p) / 20000));

  c.seed = 100;
  CHECK(*run_sampled(c).empirical_counts != *a.empirical_counts);
  c.shots = 0;
  CHECK_THROWS_WITH(run_sampled(c), doctest::Contains("shots must be at least 1"));
}

TEST_CASE("one sender alone leaves Bob maximally mixed on the diagonal") {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 20; ++trial) {
    const ShareVector s1 = random_generic_share(rng, 1);
    const ChannelSpec channel = build_channel(ProtocolId::P1);
    const MeasurementBasis b1 = build_mobv1(s1);
    Matrix avg(4, 4);
    for (int j = 0; j < 4; ++j) {
      const Projection pr = project(channel.state, std::vector<int>{1}, b1.vector(static_cast<std::size_t>(j)));
      const DensityMatrix rho = reduced_density(pr.residual.normalized(), std::vector<int>{3});
      CHECK(rho.is_diagonal(1e-12));
      const DensityMatrix weighted = reduced_density(pr.residual, std::vector<int>{3});
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t col = 0; col < 4; ++col) avg(r, col) += weighted.entries()(r, col);
    }
    Matrix quarter = Matrix::identity(4);
    for (std::size_t r = 0; r < 4; ++r) quarter(r, r) = 0.25;
    CHECK(avg.max_abs_diff(quarter) <= 1e-12);
  }
}
