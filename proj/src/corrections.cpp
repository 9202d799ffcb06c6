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

#include "jrsp/corrections.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "jrsp/parallel.hpp"
#include "jrsp/target.hpp"

namespace jrsp {

namespace {

using Rows = std::array<std::array<int, 4>, 4>;
using Block = std::array<std::array<int, 2>, 2>;

constexpr Block kI{{{1, 0}, {0, 1}}};
constexpr Block kX{{{0, 1}, {1, 0}}};
constexpr Block kO{{{0, 0}, {0, 0}}};

constexpr Rows blocks(const Block& a, const Block& b, const Block& c, const Block& d) {
  Rows r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      r[i][j] = a[i][j];
      r[i][j + 2] = b[i][j];
      r[i + 2][j] = c[i][j];
      r[i + 2][j + 2] = d[i][j];
    }
  return r;
}

const std::array<Rows, kCorrectionCount> kUnitaryRows{{
    blocks(kI, kO, kO, kI),
    blocks(kX, kO, kO, kX),
    blocks(kO, kI, kI, kO),
    blocks(kO, kX, kX, kO),
    {{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}}},
    {{{0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}}},
    {{{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}},
    {{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}}},
}};

CorrectionUnitary make_unitary(int index) {
  const Rows& rows = kUnitaryRows[static_cast<std::size_t>(index)];
  Matrix m(4, 4);
  std::array<int, 4> image{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      m(r, c) = rows[r][c];
      if (rows[r][c] == 1) image[c] = r;
    }
  return CorrectionUnitary{index, LocalOperator(std::move(m)), image};
}

struct TranscribedRow {
  const char* outcome;
  std::array<int, 2> unitaries;  // second entry unused for one Bob particle
};

// Single-qudit protocol, Bob holds particle 3.
constexpr TranscribedRow kTableP1[] = {
    {"0,0", {0, 0}}, {"1,1", {1, 0}}, {"2,2", {2, 0}}, {"3,3", {3, 0}},
};

// Two GHZ triples, Bob holds (3, 6). Left column then right column as printed.
constexpr TranscribedRow kTableP2[] = {
    {"00,00", {0, 0}}, {"10,10", {1, 1}}, {"20,20", {2, 2}}, {"30,30", {3, 3}},
    {"01,01", {1, 4}}, {"11,11", {1, 5}}, {"21,21", {2, 6}}, {"31,31", {3, 7}},
    {"02,02", {0, 2}}, {"12,12", {1, 3}}, {"22,22", {2, 0}}, {"32,32", {3, 1}},
    {"03,03", {0, 6}}, {"13,13", {1, 7}}, {"23,23", {2, 4}}, {"33,33", {3, 5}},
};

// Three EPR pairs, Bob holds (4, 6). Each printed row covers the outcome and
// its "(or ...)" alternative.
struct TranscribedPairRow {
  const char* outcome;
  const char* alternative;
  std::array<int, 2> unitaries;
};

constexpr TranscribedPairRow kTableP3[] = {
    {"00,00", "22,22", {0, 0}}, {"01,00", "23,22", {4, 0}},
    {"00,01", "22,23", {0, 4}}, {"01,01", "23,23", {4, 4}},
    {"00,02", "22,20", {0, 2}}, {"01,02", "23,20", {4, 2}},
    {"00,03", "22,21", {0, 6}}, {"01,03", "23,21", {4, 6}},
    {"10,10", "32,32", {1, 1}}, {"11,10", "33,32", {5, 1}},
    {"10,11", "32,33", {1, 5}}, {"11,11", "33,33", {5, 5}},
    {"10,12", "32,30", {1, 3}}, {"11,12", "33,30", {5, 3}},
    {"10,13", "32,31", {1, 7}}, {"11,13", "33,31", {5, 7}},
    {"20,20", "02,02", {2, 2}}, {"21,20", "03,02", {6, 2}},
    {"20,21", "02,03", {2, 6}}, {"21,21", "03,03", {6, 6}},
    {"20,22", "02,00", {2, 0}}, {"21,22", "03,00", {6, 0}},
    {"20,23", "02,01", {2, 4}}, {"21,23", "03,01", {6, 4}},
    {"30,30", "12,12", {3, 3}}, {"31,30", "13,12", {7, 3}},
    {"30,31", "12,13", {3, 7}}, {"31,31", "13,13", {7, 7}},
    {"30,32", "12,10", {3, 1}}, {"31,32", "13,10", {7, 1}},
    {"30,33", "12,11", {3, 5}}, {"31,33", "13,11", {7, 5}},
};

void add_rule(CorrectionTable& table, OutcomeKey key, BobOps ops) {
  if (!table.rules.emplace(key, CorrectionRule{key, std::move(ops)}).second) {
    throw Error("duplicate outcome in correction table");
  }
}

int parse_index(std::string_view digits) {
  int v = 0;
  for (char c : digits) {
    if (c < '0' || c > '3') throw Error("bad outcome digit in '" + std::string(digits) + "'");
    v = v * 4 + (c - '0');
  }
  return v;
}

// Assignment number `code` in lexicographic order of unitary indices.
BobOps assignment(std::span<const int> labels, int code) {
  if (labels.size() == 1) return {{labels[0], code}};
  return {{labels[0], code / kCorrectionCount}, {labels[1], code % kCorrectionCount}};
}

std::string index_text(int index, int arity) {
  if (arity == 1) return std::to_string(index);
  return std::to_string(index / 4) + std::to_string(index % 4);
}

}  // namespace

const CorrectionUnitary& correction_unitary(int i) {
  static const std::array<CorrectionUnitary, kCorrectionCount> all = [] {
    return std::array{make_unitary(0), make_unitary(1), make_unitary(2), make_unitary(3),
                      make_unitary(4), make_unitary(5), make_unitary(6), make_unitary(7)};
  }();
  if (i < 0 || i >= kCorrectionCount) throw Error("correction index out of range: " + std::to_string(i));
  return all[static_cast<std::size_t>(i)];
}

std::string format_outcome(OutcomeKey key, int arity) {
  return index_text(key.alice1, arity) + "," + index_text(key.alice2, arity);
}

OutcomeKey parse_outcome(std::string_view text, int arity) {
  const auto comma = text.find(',');
  const std::size_t width = arity == 1 ? 1 : 2;
  if (comma == std::string_view::npos || comma != width || text.size() != 2 * width + 1) {
    throw Error("bad outcome key '" + std::string(text) + "'");
  }
  return OutcomeKey{parse_index(text.substr(0, width)), parse_index(text.substr(width + 1))};
}

std::string format_ops(const BobOps& ops) {
  std::string out;
  for (const auto& op : ops) {
    if (!out.empty()) out += ' ';
    out += "(U" + std::to_string(op.unitary) + ")" + std::to_string(op.label);
  }
  return out;
}

std::string_view to_string(Provenance provenance) noexcept {
  return provenance == Provenance::Transcribed ? "transcribed" : "derived";
}

Provenance parse_provenance(std::string_view text) {
  if (text == "transcribed") return Provenance::Transcribed;
  if (text == "derived") return Provenance::Derived;
  throw Error("unknown provenance '" + std::string(text) + "' (expected derived or transcribed)");
}

const CorrectionRule* CorrectionTable::find(OutcomeKey key) const {
  auto it = rules.find(key);
  return it == rules.end() ? nullptr : &it->second;
}

CorrectionTable published_table(ProtocolId protocol) {
  CorrectionTable table{protocol, Provenance::Transcribed, {}, {}};
  switch (protocol) {
    case ProtocolId::P1:
      for (const auto& row : kTableP1) add_rule(table, parse_outcome(row.outcome, 1), {{3, row.unitaries[0]}});
      break;
    case ProtocolId::P2:
      for (const auto& row : kTableP2)
        add_rule(table, parse_outcome(row.outcome, 2), {{3, row.unitaries[0]}, {6, row.unitaries[1]}});
      break;
    case ProtocolId::P3:
      for (const auto& row : kTableP3) {
        const BobOps ops{{4, row.unitaries[0]}, {6, row.unitaries[1]}};
        add_rule(table, parse_outcome(row.outcome, 2), ops);
        add_rule(table, parse_outcome(row.alternative, 2), ops);
      }
      break;
  }
  return table;
}

PureState apply_correction(const BobOps& ops, const PureState& state) {
  PureState out = state;
  for (const auto& op : ops) out = apply_local(correction_unitary(op.unitary).op, op.label, out);
  return out;
}

CorrectionSearch best_correction(const PureState& collapsed, const PureState& target,
                                 std::span<const int> bob_labels) {
  if (collapsed.layout() != target.layout()) throw Error("layout mismatch between collapsed and target states");
  if (bob_labels.empty() || bob_labels.size() > 2) throw Error("correction search supports one or two Bob particles");
  for (int label : bob_labels)
    if (!collapsed.layout().contains(label)) throw Error("layout mismatch: Bob label not in collapsed state");

  CorrectionSearch best{{}, -1.0};
  const std::size_t n = bob_labels.size();
  const int total = n == 1 ? kCorrectionCount : kCorrectionCount * kCorrectionCount;
  for (int code = 0; code < total; ++code) {
    BobOps ops = assignment(bob_labels, code);
    const double f = fidelity(apply_correction(ops, collapsed), target);
    if (f > best.fidelity) best = {std::move(ops), f};
  }
  return best;
}

std::optional<BobOps> search_correction(const PureState& collapsed, const PureState& target,
                                        std::span<const int> bob_labels) {
  if (collapsed.layout() != target.layout()) throw Error("layout mismatch between collapsed and target states");
  const std::size_t n = bob_labels.size();
  if (n == 0 || n > 2) throw Error("correction search supports one or two Bob particles");
  const int total = n == 1 ? kCorrectionCount : kCorrectionCount * kCorrectionCount;
  for (int code = 0; code < total; ++code) {
    BobOps ops = assignment(bob_labels, code);
    if (fidelity(apply_correction(ops, collapsed), target) >= 1.0 - kFidelityTolerance) return ops;
  }
  return std::nullopt;
}

std::pair<MeasurementBasis, MeasurementBasis> sender_bases(const ChannelSpec& channel, const ShareVector& share1,
                                                           const ShareVector& share2) {
  const auto& g1 = channel.group(Party::Alice1).labels;
  const auto& g2 = channel.group(Party::Alice2).labels;
  if (protocol_arity(channel.protocol) == 1) return {build_mobv1(share1, g1), build_mobv1(share2, g2)};
  return {build_mobv2(share1, g1), build_mobv2(share2, g2)};
}

CorrectionTable regenerate_table(ProtocolId protocol, const ShareVector& share1, const ShareVector& share2,
                                 unsigned threads) {
  const ChannelSpec channel = build_channel(protocol);
  const std::vector<int> bob = channel.bob_labels();
  const int arity = protocol_arity(protocol);
  const TargetState target = target_state(share1, share2, arity, bob);
  const auto [basis1, basis2] = sender_bases(channel, share1, share2);
  const auto branches = enumerate_branches(channel, basis1.vectors(), basis2.vectors(),
                                           MeasurementOrder::Alice1First, threads);

  std::vector<std::optional<BobOps>> found(branches.size());
  parallel_for(branches.size(), threads, [&](std::size_t i) {
    if (branches[i].probability <= kFidelityTolerance * kFidelityTolerance) return;
    found[i] = search_correction(branches[i].residual.normalized(), target.amplitudes, bob);
  });

  CorrectionTable table{protocol, Provenance::Derived, {}, {}};
  const std::size_t n2 = basis2.size();
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (!found[i]) continue;
    add_rule(table, OutcomeKey{static_cast<int>(i / n2), static_cast<int>(i % n2)}, *found[i]);
  }
  if (!is_generic(share1) || !is_generic(share2)) {
    table.warnings.emplace_back("non-generic shares: derived table may contain accidental successes");
  }
  return table;
}

std::pair<ShareVector, ShareVector> reference_shares() {
  std::mt19937_64 rng(0x4a525350u);
  ShareVector s1 = random_generic_share(rng, 1);
  ShareVector s2 = random_generic_share(rng, 2);
  return {s1, s2};
}

const CorrectionTable& reference_derived_table(ProtocolId protocol) {
  static const std::array<CorrectionTable, 3> tables = [] {
    const auto [s1, s2] = reference_shares();
    return std::array{regenerate_table(ProtocolId::P1, s1, s2), regenerate_table(ProtocolId::P2, s1, s2),
                      regenerate_table(ProtocolId::P3, s1, s2)};
  }();
  return tables[static_cast<std::size_t>(protocol)];
}

std::vector<TableDiffEntry> diff_tables(const CorrectionTable& derived, const CorrectionTable& transcribed) {
  std::map<OutcomeKey, TableDiffEntry> entries;
  for (const auto& [key, rule] : derived.rules) {
    const CorrectionRule* other = transcribed.find(key);
    if (other == nullptr || other->bob_ops != rule.bob_ops) {
      entries[key] = TableDiffEntry{key, rule.bob_ops, other ? std::optional(other->bob_ops) : std::nullopt};
    }
  }
  for (const auto& [key, rule] : transcribed.rules) {
    if (derived.find(key) == nullptr) entries[key] = TableDiffEntry{key, std::nullopt, rule.bob_ops};
  }
  std::vector<TableDiffEntry> out;
  for (auto& [key, e] : entries) out.push_back(std::move(e));
  return out;
}

}  // namespace jrsp
