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

#include "jrsp/protocol_engine.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "jrsp/parallel.hpp"

namespace jrsp {

namespace {

// Below this a branch carries no state to normalize.
constexpr double kZeroProbability = 1e-24;

double shot_uniform(std::uint64_t seed, std::uint64_t shot) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shot), static_cast<std::uint32_t>(shot >> 32)};
  std::mt19937_64 engine(seq);
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace

const OutcomeRecord& ProtocolReport::record(OutcomeKey key) const {
  auto it = std::lower_bound(records.begin(), records.end(), key,
                             [](const OutcomeRecord& r, OutcomeKey k) { return r.outcome < k; });
  if (it == records.end() || it->outcome != key) throw Error("outcome not in report");
  return *it;
}

const CorrectionTable& selected_table(ProtocolId protocol, Provenance provenance) {
  if (provenance == Provenance::Derived) return reference_derived_table(protocol);
  static const std::array<CorrectionTable, 3> published{published_table(ProtocolId::P1),
                                                        published_table(ProtocolId::P2),
                                                        published_table(ProtocolId::P3)};
  return published[static_cast<std::size_t>(protocol)];
}

int classical_cost(ProtocolId protocol) {
  const ChannelSpec channel = build_channel(protocol);
  const auto [s1, s2] = reference_shares();
  const auto [b1, b2] = sender_bases(channel, s1, s2);
  int bits = 0;
  for (std::size_t n : {b1.size(), b2.size()}) {
    if (!std::has_single_bit(n)) throw Error("basis size is not a power of two");
    bits += std::countr_zero(n);
  }
  return bits;
}

ProtocolReport enumerate_outcomes(const RunConfig& config) {
  const unsigned threads = resolve_threads(config.threads);
  const ChannelSpec channel = build_channel(config.protocol);
  const std::vector<int> bob = channel.bob_labels();
  const int arity = protocol_arity(config.protocol);
  TargetState target = target_state(config.share1, config.share2, arity, bob);
  const auto [basis1, basis2] = sender_bases(channel, config.share1, config.share2);
  const auto branches = enumerate_branches(channel, basis1.vectors(), basis2.vectors(), config.order, threads);
  const CorrectionTable& table = selected_table(config.protocol, config.table_provenance);

  const std::size_t n2 = basis2.size();
  std::vector<std::optional<OutcomeRecord>> slots(branches.size());
  parallel_for(branches.size(), threads, [&](std::size_t i) {
    const OutcomeKey key{static_cast<int>(i / n2), static_cast<int>(i % n2)};
    const double p = branches[i].probability;
    const bool live = p > kZeroProbability;
    PureState collapsed = live ? branches[i].residual.normalized() : PureState::zero(branches[i].residual.layout());
    const CorrectionRule* rule = table.find(key);

    double post = 0.0;
    double best = 0.0;
    if (live) {
      post = rule ? fidelity(apply_correction(rule->bob_ops, collapsed), target.amplitudes)
                  : fidelity(collapsed, target.amplitudes);
      best = best_correction(collapsed, target.amplitudes, bob).fidelity;
    }
    slots[i] = OutcomeRecord{key,
                             p,
                             std::move(collapsed),
                             rule != nullptr,
                             rule ? std::optional(*rule) : std::nullopt,
                             post,
                             best};
  });

  std::vector<OutcomeRecord> records;
  records.reserve(slots.size());
  double success = 0.0;
  for (auto& s : slots) {
    if (s->success) success += s->probability;
    records.push_back(std::move(*s));
  }

  return ProtocolReport{config.protocol,
                        config.share1,
                        config.share2,
                        std::move(target),
                        bob,
                        std::move(records),
                        success,
                        classical_cost(config.protocol),
                        config.table_provenance,
                        std::nullopt,
                        std::nullopt,
                        std::nullopt};
}

ProtocolReport run_sampled(const RunConfig& config) {
  if (config.shots == 0) throw Error("shots must be at least 1 in sample mode");
  ProtocolReport report = enumerate_outcomes(config);

  std::vector<double> cdf;
  cdf.reserve(report.records.size());
  double acc = 0.0;
  for (const auto& r : report.records) {
    acc += r.probability;
    cdf.push_back(acc);
  }
  const double total = acc;

  std::vector<std::uint32_t> drawn(config.shots);
  parallel_for(config.shots, resolve_threads(config.threads), [&](std::size_t shot) {
    const double u = shot_uniform(config.seed, shot) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    drawn[shot] = static_cast<std::uint32_t>(it - cdf.begin());
  });

  std::map<OutcomeKey, std::uint64_t> counts;
  for (const auto& r : report.records) counts[r.outcome] = 0;
  for (std::uint32_t idx : drawn) ++counts[report.records[idx].outcome];

  report.seed = config.seed;
  report.shots = config.shots;
  report.empirical_counts = std::move(counts);
  return report;
}

}  // namespace jrsp
