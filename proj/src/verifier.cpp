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

#include "jrsp/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "jrsp/parallel.hpp"
#include "jrsp/target.hpp"

namespace jrsp {

namespace {

constexpr double kMatchTolerance = kFidelityTolerance;

// ---- published displays ------------------------------------------------------

struct DisplayedBranch {
  const char* outcome;
  const char* expression;
};

struct TermCounts {
  int nonzero;
  int success;
  int failure;
};

struct WorkedExample {
  const char* outcome;
  const char* collapse;
  BobOps printed_ops;
  // Prefactor printed for the corrected state, when the text gives one.
  std::optional<std::pair<double, const char*>> corrected_prefactor;
};

struct ProtocolDisplay {
  double prefactor;
  const char* prefactor_text;
  std::vector<DisplayedBranch> branches;
  TermCounts counts;
  WorkedExample example;
};

const ProtocolDisplay& display_for(ProtocolId protocol) {
  static const ProtocolDisplay p1{
      0.5,
      "1/2",
      {
          {"0,0", "+a|0>+b|1>+c|2>+d|3>"},
          {"1,1", "+b|0>+a|1>+d|2>+c|3>"},
          {"2,2", "+c|0>+d|1>+a|2>+b|3>"},
          {"3,3", "+d|0>+c|1>+b|2>+a|3>"},
          {"0,1", "+a1b1|0>-b1a2|1>+c1d2|2>-d1c2|3>"},
      },
      {16, 4, 12},
      {"1,1", "+b|0>+a|1>+d|2>+c|3>", {{4, 1}}, std::pair{1.0 / 3.0, "1/3"}},
  };
  static const ProtocolDisplay p2{
      0.25,
      "1/4",
      {
          {"00,00", "+a|00>+b|11>+c|22>+d|33>"}, {"10,10", "+b|00>+a|11>+d|22>+c|33>"},
          {"20,20", "+c|00>+d|11>+a|22>+b|33>"}, {"30,30", "+d|00>+c|11>+b|22>+a|33>"},
          {"01,01", "+a|01>+b|12>+c|23>+d|30>"}, {"11,11", "+b|01>+a|12>+d|23>+c|30>"},
          {"21,21", "+c|01>+d|12>+a|23>+b|30>"}, {"31,31", "+d|01>+c|12>+b|23>+a|30>"},
          {"02,02", "+a|02>+b|13>+c|20>+d|31>"}, {"12,12", "+b|02>+a|13>+d|20>+c|31>"},
          {"22,22", "+c|02>+d|13>+a|20>+b|31>"}, {"32,32", "+d|02>+c|13>+b|20>+a|31>"},
          {"03,03", "+a|03>+b|10>+c|21>+d|32>"}, {"13,13", "+b|03>+a|10>+d|21>+c|32>"},
          {"23,23", "+c|03>+d|10>+a|21>+b|32>"}, {"33,33", "+d|03>+c|10>+b|21>+a|32>"},
          {"00,10", "+a1b2|00>-a2b1|11>+c1d2|22>-c2d1|33>"},
      },
      {64, 16, 48},
      {"11,11", "+b|01>+a|12>+d|23>+c|30>", {{3, 1}, {6, 5}}, std::nullopt},
  };
  static const ProtocolDisplay p3{
      0.125,
      "1/8",
      {
          {"00,10", "+a1b2|00>-b1a2|11>+c1d2|22>-d1c2|33>"},
      },
      {256, 64, 192},
      {"20,21", "+c|01>+d|12>+a|23>+b|30>", {{4, 2}, {6, 6}}, std::nullopt},
  };
  switch (protocol) {
    case ProtocolId::P1: return p1;
    case ProtocolId::P2: return p2;
    case ProtocolId::P3: return p3;
  }
  throw Error("unknown protocol");
}

// Bob-state patterns of the eight group families, as printed (line p).
constexpr const char* kGroupPatterns[8] = {
    "+a|L0j>+b|L1j>+c|L2j>+d|L3j>", "+b|L0j>+a|L1j>+d|L2j>+c|L3j>", "+c|L0j>+d|L1j>+a|L2j>+b|L3j>",
    "+d|L0j>+c|L2j>+b|L2j>+a|L3j>", "+a|L1j>+b|L2j>+c|L3j>+d|L0j>", "+b|L1j>+a|L2j>+d|L3j>+c|L0j>",
    "+c|L1j>+d|L2j>+a|L3j>+b|L0j>", "+d|L1j>+c|L2j>+b|L3j>+a|L0j>",
};

constexpr const char* kGroupMembers[32][2] = {
    {"00,00", "22,22"}, {"00,01", "22,23"}, {"00,02", "22,20"}, {"00,03", "22,21"},
    {"10,10", "32,32"}, {"10,11", "32,33"}, {"10,12", "32,30"}, {"10,13", "32,31"},
    {"20,20", "02,02"}, {"20,21", "02,03"}, {"20,22", "02,00"}, {"20,23", "02,01"},
    {"30,30", "12,12"}, {"30,31", "12,13"}, {"30,32", "12,10"}, {"30,33", "12,11"},
    {"01,00", "23,22"}, {"01,01", "23,23"}, {"01,02", "23,20"}, {"01,03", "23,21"},
    {"11,10", "33,32"}, {"11,11", "33,33"}, {"11,12", "33,30"}, {"11,13", "33,31"},
    {"21,20", "03,02"}, {"21,21", "03,03"}, {"21,22", "03,00"}, {"21,23", "03,01"},
    {"31,30", "13,12"}, {"31,31", "13,13"}, {"31,32", "13,10"}, {"31,33", "13,11"},
};

constexpr std::string_view kKnownDiscrepancies[] = {
    "p1.decomposition.branch[0,1]",
    "p1.worked_example.corrected_prefactor",
    "p1.worked_example.correction_particle",
    "p2.table[01,01]",
    // Duplicated pair index in the printed G3j line.
    "p3.groups.G30.pattern",
    "p3.groups.G31.pattern",
    "p3.groups.G32.pattern",
    "p3.groups.G33.pattern",
    // G4j..G7j: printed pair kets are offset by one in j from the member outcomes.
    "p3.groups.G40.pattern",
    "p3.groups.G41.pattern",
    "p3.groups.G42.pattern",
    "p3.groups.G43.pattern",
    "p3.groups.G50.pattern",
    "p3.groups.G51.pattern",
    "p3.groups.G52.pattern",
    "p3.groups.G53.pattern",
    "p3.groups.G60.pattern",
    "p3.groups.G61.pattern",
    "p3.groups.G62.pattern",
    "p3.groups.G63.pattern",
    "p3.groups.G70.pattern",
    "p3.groups.G71.pattern",
    "p3.groups.G72.pattern",
    "p3.groups.G73.pattern",
};

// ---- coefficient language ---------------------------------------------------------

struct Factor {
  int component;
  int sender;  // 0: product of both shares
};

struct Term {
  int sign;
  std::vector<Factor> factors;
  std::vector<int> ket;  // empty when `pair_first` is set
  int pair_first = -1;
};

std::vector<Term> parse_display(std::string_view text) {
  std::vector<Term> terms;
  std::size_t pos = 0;
  auto fail = [&](const char* what) {
    throw Error(std::string("display parse error (") + what + ") in '" + std::string(text) + "'");
  };
  while (pos < text.size()) {
    Term term;
    if (text[pos] == '+') {
      term.sign = 1;
    } else if (text[pos] == '-') {
      term.sign = -1;
    } else {
      fail("expected sign");
    }
    ++pos;
    while (pos < text.size() && text[pos] >= 'a' && text[pos] <= 'd') {
      Factor f{text[pos] - 'a', 0};
      ++pos;
      if (pos < text.size() && (text[pos] == '1' || text[pos] == '2')) f.sender = text[pos++] - '0';
      term.factors.push_back(f);
    }
    if (term.factors.empty()) fail("expected coefficient");
    if (pos >= text.size() || text[pos] != '|') fail("expected ket");
    ++pos;
    if (pos < text.size() && text[pos] == 'L') {
      if (pos + 3 >= text.size() || text[pos + 2] != 'j') fail("bad pair ket");
      term.pair_first = text[pos + 1] - '0';
      if (term.pair_first < 0 || term.pair_first > 3) fail("bad pair ket");
      pos += 3;
    } else {
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '3') term.ket.push_back(text[pos++] - '0');
      if (term.ket.empty()) fail("empty ket");
    }
    if (pos >= text.size() || text[pos] != '>') fail("unterminated ket");
    ++pos;
    terms.push_back(std::move(term));
  }
  return terms;
}

char letter(int component) { return static_cast<char>('a' + component); }

std::string fraction_text(double value) {
  if (value != 0.0) {
    const double inv = 1.0 / std::abs(value);
    const double rounded = std::round(inv);
    if (std::abs(inv - rounded) < 1e-9 && rounded >= 1.0) {
      return std::string(value < 0 ? "-" : "") + "1/" + std::to_string(static_cast<long long>(rounded));
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string with_prefactor(const char* prefactor, const std::string& body) {
  return "(" + std::string(prefactor) + ")(" + body + ")";
}

// Replaces the group index placeholder in pair kets.
std::string instantiate_j(std::string_view expression, int j) {
  std::string out(expression);
  const char digit = static_cast<char>('0' + j);
  for (std::size_t p = out.find("j>"); p != std::string::npos; p = out.find("j>", p)) out[p] = digit;
  return out;
}

double distance(const PureState& a, const PureState& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double distance_up_to_sign(const PureState& a, const PureState& b) {
  return std::min(distance(a, b), distance(a, b.scaled(-1.0)));
}

Discrepancy make_discrepancy(std::string location, std::string printed, std::string derived) {
  const auto known = known_discrepancy_locations();
  const bool ledgered = std::find(known.begin(), known.end(), location) != known.end();
  return Discrepancy{std::move(location), std::move(printed), std::move(derived),
                     ledgered ? Severity::TypoSuspected : Severity::Unresolved};
}

std::string location_prefix(ProtocolId protocol) { return std::string(to_string(protocol)); }

struct Branches {
  ChannelSpec channel;
  std::vector<int> bob;
  TargetState target;
  std::size_t n2;
  std::vector<Projection> projections;

  const Projection& at(OutcomeKey key) const {
    return projections[static_cast<std::size_t>(key.alice1) * n2 + static_cast<std::size_t>(key.alice2)];
  }
};

Branches compute_branches(ProtocolId protocol, const ShareVector& s1, const ShareVector& s2, unsigned threads = 1) {
  ChannelSpec channel = build_channel(protocol);
  std::vector<int> bob = channel.bob_labels();
  TargetState target = target_state(s1, s2, protocol_arity(protocol), bob);
  auto [b1, b2] = sender_bases(channel, s1, s2);
  auto projections = enumerate_branches(channel, b1.vectors(), b2.vectors(), MeasurementOrder::Alice1First, threads);
  return Branches{std::move(channel), std::move(bob), std::move(target), b2.size(), std::move(projections)};
}

void sort_result(VerificationResult& r) {
  std::stable_sort(r.discrepancies.begin(), r.discrepancies.end(),
                   [](const Discrepancy& a, const Discrepancy& b) { return a.location < b.location; });
}

void add_generic_warning(VerificationResult& r, const ShareVector& s1, const ShareVector& s2) {
  if (!is_generic(s1) || !is_generic(s2)) {
    r.warnings.emplace_back("non-generic shares: pattern fits and success counts may be ambiguous");
  }
}

}  // namespace

std::string_view to_string(Severity severity) noexcept {
  return severity == Severity::TypoSuspected ? "typo-suspected" : "unresolved";
}

bool VerificationResult::all_checks_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void VerificationResult::merge(VerificationResult other) {
  checks.insert(checks.end(), std::make_move_iterator(other.checks.begin()), std::make_move_iterator(other.checks.end()));
  discrepancies.insert(discrepancies.end(), std::make_move_iterator(other.discrepancies.begin()),
                       std::make_move_iterator(other.discrepancies.end()));
  warnings.insert(warnings.end(), std::make_move_iterator(other.warnings.begin()),
                  std::make_move_iterator(other.warnings.end()));
  sort_result(*this);
}

std::span<const std::string_view> known_discrepancy_locations() { return kKnownDiscrepancies; }

std::span<const GroupState> published_group_states() {
  static const std::vector<GroupState> groups = [] {
    std::vector<GroupState> out;
    for (int k = 0; k < 32; ++k) {
      out.push_back(GroupState{k / 4, k % 4,
                               {parse_outcome(kGroupMembers[k][0], 2), parse_outcome(kGroupMembers[k][1], 2)}});
    }
    return out;
  }();
  return groups;
}

PureState evaluate_display(std::string_view expression, double prefactor, const ShareVector& share1,
                           const ShareVector& share2, std::vector<int> bob_labels, int group_j) {
  const auto terms = parse_display(expression);
  RegisterLayout layout(std::move(bob_labels));
  std::vector<Amplitude> amps(layout.dimension());
  for (const auto& term : terms) {
    std::vector<int> ket = term.ket;
    if (term.pair_first >= 0) ket = {term.pair_first, (term.pair_first + group_j) % 4};
    if (ket.size() != layout.size()) throw Error("display ket does not match Bob's particle count");
    double value = prefactor * term.sign;
    for (const auto& f : term.factors) {
      const auto c = static_cast<std::size_t>(f.component);
      value *= f.sender == 0 ? share1[c] * share2[c] : (f.sender == 1 ? share1[c] : share2[c]);
    }
    amps[digits_index(ket)] += value;
  }
  return PureState(std::move(layout), std::move(amps));
}

std::string fit_display(const PureState& residual, double prefactor, const ShareVector& share1,
                        const ShareVector& share2, bool pair_notation) {
  std::string out;
  const std::size_t particles = residual.layout().size();
  for (std::size_t idx = 0; idx < residual.dimension(); ++idx) {
    const Amplitude amp = residual[idx];
    if (std::abs(amp) <= kMatchTolerance) continue;
    const double v = amp.real() / prefactor;

    std::optional<std::pair<int, int>> match;
    int sign = 1;
    // Diagonal products first so that a = a1*a2 wins over accidental ties.
    for (int pass = 0; pass < 2 && !match; ++pass)
      for (int c1 = 0; c1 < 4 && !match; ++c1)
        for (int c2 = 0; c2 < 4 && !match; ++c2) {
          if ((pass == 0) != (c1 == c2)) continue;
          const double prod = share1[static_cast<std::size_t>(c1)] * share2[static_cast<std::size_t>(c2)];
          for (int s : {1, -1})
            if (!match && std::abs(amp.imag()) <= kMatchTolerance && std::abs(v - s * prod) <= kMatchTolerance) {
              match = std::pair{c1, c2};
              sign = s;
            }
        }

    const auto digits = index_digits(idx, particles);
    std::string ket;
    if (pair_notation && particles == 2) {
      ket = "L" + std::to_string(digits[0]) + std::to_string((digits[1] - digits[0] + 4) % 4);
    } else {
      for (int d : digits) ket += static_cast<char>('0' + d);
    }

    if (match) {
      out += sign > 0 ? '+' : '-';
      if (match->first == match->second) {
        out += letter(match->first);
      } else {
        out += letter(match->first);
        out += '1';
        out += letter(match->second);
        out += '2';
      }
    } else {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%+.12g", v);
      out += std::string("?") + buf;
    }
    out += "|" + ket + ">";
  }
  return out.empty() ? "0" : out;
}

VerificationResult verify_decomposition(ProtocolId protocol, const ShareVector& share1, const ShareVector& share2) {
  VerificationResult result;
  add_generic_warning(result, share1, share2);
  const ProtocolDisplay& display = display_for(protocol);
  const std::string prefix = location_prefix(protocol);
  const int arity = protocol_arity(protocol);
  const Branches br = compute_branches(protocol, share1, share2);

  double total = 0.0;
  int nonzero = 0;
  int success = 0;
  for (const auto& pr : br.projections) {
    total += pr.probability;
    if (pr.residual.norm() <= kMatchTolerance) continue;
    ++nonzero;
    if (search_correction(pr.residual.normalized(), br.target.amplitudes, br.bob)) ++success;
  }
  result.checks.push_back({prefix + ".decomposition.completeness", std::abs(total - 1.0) <= kFidelityTolerance,
                           "sum of branch probabilities = " + fraction_text(total)});

  const auto compare_count = [&](const char* what, int printed, int derived) {
    result.checks.push_back({prefix + ".decomposition." + what, printed == derived,
                             "printed " + std::to_string(printed) + ", derived " + std::to_string(derived)});
    if (printed != derived) {
      result.discrepancies.push_back(make_discrepancy(prefix + ".decomposition." + what, std::to_string(printed),
                                                      std::to_string(derived)));
    }
  };
  compare_count("nonzero_terms", display.counts.nonzero, nonzero);
  compare_count("success_terms", display.counts.success, success);
  compare_count("failure_terms", display.counts.failure, nonzero - success);

  int matched = 0;
  for (const auto& shown : display.branches) {
    const OutcomeKey key = parse_outcome(shown.outcome, arity);
    const PureState& computed = br.at(key).residual;
    const PureState printed = evaluate_display(shown.expression, display.prefactor, share1, share2, br.bob);
    if (distance(computed, printed) <= kMatchTolerance) {
      ++matched;
    } else {
      result.discrepancies.push_back(make_discrepancy(
          prefix + ".decomposition.branch[" + shown.outcome + "]",
          with_prefactor(display.prefactor_text, shown.expression),
          with_prefactor(display.prefactor_text, fit_display(computed, display.prefactor, share1, share2))));
    }
  }
  result.checks.push_back({prefix + ".decomposition.displayed_branches", true,
                           std::to_string(matched) + " of " + std::to_string(display.branches.size()) +
                               " displayed branches match the direct projection"});

  // Worked example: collapse, correction, and the corrected state's prefactor.
  const WorkedExample& ex = display.example;
  const OutcomeKey key = parse_outcome(ex.outcome, arity);
  const PureState& computed = br.at(key).residual;
  const PureState printed = evaluate_display(ex.collapse, display.prefactor, share1, share2, br.bob);
  if (distance(computed, printed) > kMatchTolerance) {
    result.discrepancies.push_back(make_discrepancy(
        prefix + ".worked_example.collapse", with_prefactor(display.prefactor_text, ex.collapse),
        with_prefactor(display.prefactor_text, fit_display(computed, display.prefactor, share1, share2))));
  }
  const auto derived_ops = search_correction(computed.normalized(), br.target.amplitudes, br.bob);
  const std::string derived_text = derived_ops ? format_ops(*derived_ops) : "(none)";

  std::vector<int> printed_labels;
  std::vector<int> printed_unitaries;
  for (const auto& op : ex.printed_ops) {
    printed_labels.push_back(op.label);
    printed_unitaries.push_back(op.unitary);
  }
  if (printed_labels != br.bob) {
    std::string printed_text;
    std::string derived;
    for (int l : printed_labels) printed_text += (printed_text.empty() ? "" : ",") + std::to_string(l);
    for (int l : br.bob) derived += (derived.empty() ? "" : ",") + std::to_string(l);
    result.discrepancies.push_back(make_discrepancy(prefix + ".worked_example.correction_particle", printed_text, derived));
  }
  // Printed unitaries applied to Bob's actual particles.
  BobOps on_bob;
  for (std::size_t k = 0; k < printed_unitaries.size() && k < br.bob.size(); ++k) {
    on_bob.push_back({br.bob[k], printed_unitaries[k]});
  }
  if (!derived_ops || *derived_ops != on_bob) {
    result.discrepancies.push_back(
        make_discrepancy(prefix + ".worked_example.correction", format_ops(on_bob), derived_text));
  }
  const PureState corrected = apply_correction(on_bob, computed);
  const PureState pattern = evaluate_display(arity == 1 ? "+a|0>+b|1>+c|2>+d|3>" : "+a|00>+b|11>+c|22>+d|33>", 1.0,
                                             share1, share2, br.bob);
  const double k = inner(pattern, corrected).real() / pattern.norm_squared();
  const bool reconstructs = distance(corrected, pattern.scaled(k)) <= kMatchTolerance;
  result.checks.push_back({prefix + ".worked_example.reconstructs_target", reconstructs,
                           "corrected state = " + fraction_text(k) + " x target coefficients"});
  if (ex.corrected_prefactor && std::abs(ex.corrected_prefactor->first - k) > kMatchTolerance) {
    result.discrepancies.push_back(make_discrepancy(prefix + ".worked_example.corrected_prefactor",
                                                    ex.corrected_prefactor->second, fraction_text(k)));
  }

  sort_result(result);
  return result;
}

VerificationResult verify_group_states(const ShareVector& share1, const ShareVector& share2) {
  VerificationResult result;
  add_generic_warning(result, share1, share2);
  const Branches br = compute_branches(ProtocolId::P3, share1, share2);
  const auto groups = published_group_states();

  std::set<OutcomeKey> members;
  for (const auto& g : groups) members.insert(g.members.begin(), g.members.end());
  std::set<OutcomeKey> table_keys;
  for (const auto& [key, rule] : published_table(ProtocolId::P3).rules) table_keys.insert(key);
  std::set<OutcomeKey> derived_success;
  for (std::size_t i = 0; i < br.projections.size(); ++i) {
    const auto& pr = br.projections[i];
    if (pr.residual.norm() <= kMatchTolerance) continue;
    if (search_correction(pr.residual.normalized(), br.target.amplitudes, br.bob)) {
      derived_success.insert(OutcomeKey{static_cast<int>(i / br.n2), static_cast<int>(i % br.n2)});
    }
  }
  result.checks.push_back({"p3.groups.coverage", members.size() == 64,
                           std::to_string(members.size()) + " distinct member outcomes over 32 groups"});
  result.checks.push_back({"p3.groups.cover_table_keys", members == table_keys,
                           "group members equal the published table's outcome set"});
  result.checks.push_back({"p3.groups.cover_correctable_outcomes", members == derived_success,
                           std::to_string(derived_success.size()) + " correctable outcomes found by search"});

  int agreeing = 0;
  int pattern_matches = 0;
  for (const auto& g : groups) {
    const std::string name = "G" + std::to_string(g.p) + std::to_string(g.j);
    const PureState& r0 = br.at(g.members[0]).residual;
    const PureState& r1 = br.at(g.members[1]).residual;
    const bool agree = r0.norm() > kMatchTolerance && r1.norm() > kMatchTolerance &&
                       fidelity(r0.normalized(), r1.normalized()) >= 1.0 - kFidelityTolerance;
    if (agree) {
      ++agreeing;
    } else {
      result.discrepancies.push_back(make_discrepancy(
          "p3.groups." + name + ".members", "both members share one Bob state",
          fit_display(r0, 0.125, share1, share2, true) + " vs " + fit_display(r1, 0.125, share1, share2, true)));
    }

    const std::string pattern = kGroupPatterns[g.p];
    const PureState printed = evaluate_display(pattern, 0.125, share1, share2, br.bob, g.j);
    if (distance_up_to_sign(r0, printed) <= kMatchTolerance && distance_up_to_sign(r1, printed) <= kMatchTolerance) {
      ++pattern_matches;
    } else {
      result.discrepancies.push_back(make_discrepancy("p3.groups." + name + ".pattern",
                                                      with_prefactor("1/8", instantiate_j(pattern, g.j)),
                                                      with_prefactor("1/8", fit_display(r0, 0.125, share1, share2, true))));
    }
  }
  result.checks.push_back({"p3.groups.member_agreement", agreeing == 32,
                           std::to_string(agreeing) + " of 32 groups collapse both members to one Bob state"});
  result.checks.push_back({"p3.groups.printed_patterns", true,
                           std::to_string(pattern_matches) + " of 32 printed pair patterns match the projection"});

  // Partition the correctable outcomes by Bob state and compare with the published grouping.
  std::vector<std::vector<OutcomeKey>> classes;
  std::vector<PureState> representatives;
  for (const OutcomeKey key : derived_success) {
    const PureState s = br.at(key).residual.normalized();
    bool placed = false;
    for (std::size_t c = 0; c < classes.size() && !placed; ++c) {
      if (fidelity(representatives[c], s) >= 1.0 - kFidelityTolerance) {
        classes[c].push_back(key);
        placed = true;
      }
    }
    if (!placed) {
      classes.push_back({key});
      representatives.push_back(s);
    }
  }
  std::set<std::set<OutcomeKey>> derived_partition;
  for (const auto& c : classes) derived_partition.insert(std::set<OutcomeKey>(c.begin(), c.end()));
  std::set<std::set<OutcomeKey>> published_partition;
  for (const auto& g : groups) published_partition.insert(std::set<OutcomeKey>(g.members.begin(), g.members.end()));
  const bool same_partition = derived_partition == published_partition;
  result.checks.push_back({"p3.groups.membership", same_partition,
                           std::to_string(derived_partition.size()) + " Bob-state classes among correctable outcomes"});
  if (!same_partition) {
    result.discrepancies.push_back(make_discrepancy("p3.groups.membership",
                                                    std::to_string(published_partition.size()) + " groups of two",
                                                    std::to_string(derived_partition.size()) + " classes"));
  }

  sort_result(result);
  return result;
}

VerificationResult verify_tables(ProtocolId protocol, const ShareVector& share1, const ShareVector& share2,
                                 unsigned threads) {
  VerificationResult result;
  const CorrectionTable derived = regenerate_table(protocol, share1, share2, threads);
  const CorrectionTable transcribed = published_table(protocol);
  result.warnings = derived.warnings;
  const int arity = protocol_arity(protocol);
  const std::string prefix = location_prefix(protocol);

  const std::size_t expected = protocol == ProtocolId::P1 ? 4 : (protocol == ProtocolId::P2 ? 16 : 64);
  result.checks.push_back({prefix + ".table.rule_count", derived.rules.size() == expected,
                           std::to_string(derived.rules.size()) + " derived rules, " +
                               std::to_string(transcribed.rules.size()) + " transcribed"});

  const auto diff = diff_tables(derived, transcribed);
  for (const auto& e : diff) {
    result.discrepancies.push_back(make_discrepancy(prefix + ".table[" + format_outcome(e.outcome, arity) + "]",
                                                    e.transcribed ? format_ops(*e.transcribed) : "(none)",
                                                    e.derived ? format_ops(*e.derived) : "(none)"));
  }
  result.checks.push_back({prefix + ".table.diff", true, std::to_string(diff.size()) + " differing rules"});
  sort_result(result);
  return result;
}

VerificationResult verify_bases(const ShareVector& share1, const ShareVector& share2) {
  VerificationResult result;
  double worst = 0.0;
  bool structure = true;
  for (const ShareVector* s : {&share1, &share2}) {
    const MeasurementBasis b1 = build_mobv1(*s);
    const MeasurementBasis b2 = build_mobv2(*s);
    worst = std::max(worst, gram(b1).max_abs_diff(Matrix::identity(4)));
    worst = std::max(worst, gram(b2).max_abs_diff(Matrix::identity(16)));
    for (int g = 0; g < 4; ++g)
      for (int t = 0; t < 4; ++t)
        structure = structure && b2.vector(g, 0)[static_cast<std::size_t>(5 * t)] == b1.vector(static_cast<std::size_t>(g))[static_cast<std::size_t>(t)];
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max |G - I| = %.3g", worst);
  result.checks.push_back({"bases.orthonormal", worst <= kConstructionTolerance, buf});
  result.checks.push_back({"bases.shift_zero_rows_match_single_qudit_rows", structure,
                           "two-qudit rows with h = 0 carry the single-qudit coefficients on |tt>"});
  return result;
}

bool AuditReport::has_unresolved() const noexcept {
  return std::any_of(discrepancies.begin(), discrepancies.end(),
                     [](const Discrepancy& d) { return d.severity == Severity::Unresolved; });
}

AuditReport full_audit(std::uint64_t seed, int draws, unsigned threads) {
  if (draws < 1) throw Error("audit needs at least one share draw");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<ShareVector, ShareVector>> pairs;
  for (int d = 0; d < draws; ++d) {
    ShareVector s1 = random_generic_share(rng, 1);
    ShareVector s2 = random_generic_share(rng, 2);
    pairs.emplace_back(s1, s2);
  }

  std::vector<VerificationResult> per_draw(pairs.size());
  parallel_for(pairs.size(), resolve_threads(threads), [&](std::size_t d) {
    const auto& [s1, s2] = pairs[d];
    VerificationResult r = verify_bases(s1, s2);
    for (ProtocolId p : kAllProtocols) {
      r.merge(verify_decomposition(p, s1, s2));
      r.merge(verify_tables(p, s1, s2));
    }
    r.merge(verify_group_states(s1, s2));
    per_draw[d] = std::move(r);
  });

  AuditReport audit{seed, draws, {}, per_draw.front().discrepancies, {}};

  // Checks: one line per name, failed if any draw failed it.
  std::map<std::string, Check> merged;
  std::vector<std::string> order;
  for (const auto& r : per_draw) {
    for (const auto& c : r.checks) {
      auto [it, inserted] = merged.emplace(c.name, c);
      if (inserted) order.push_back(c.name);
      if (!c.passed && it->second.passed) it->second = c;
    }
    for (const auto& w : r.warnings)
      if (std::find(audit.warnings.begin(), audit.warnings.end(), w) == audit.warnings.end()) audit.warnings.push_back(w);
  }

  bool stable = true;
  for (const auto& r : per_draw) stable = stable && r.discrepancies == per_draw.front().discrepancies;
  merged.emplace("audit.ledger_share_independent",
                 Check{"audit.ledger_share_independent", stable,
                       "discrepancy ledger identical across " + std::to_string(draws) + " share draws"});
  order.push_back("audit.ledger_share_independent");

  std::set<std::string> found;
  for (const auto& d : audit.discrepancies) found.insert(d.location);
  std::vector<std::string> missing;
  for (auto loc : known_discrepancy_locations())
    if (!found.contains(std::string(loc))) missing.emplace_back(loc);
  merged.emplace("audit.ledger_entries_reproduced",
                 Check{"audit.ledger_entries_reproduced", missing.empty(),
                       std::to_string(known_discrepancy_locations().size() - missing.size()) + " of " +
                           std::to_string(known_discrepancy_locations().size()) + " ledgered entries reproduced"});
  order.push_back("audit.ledger_entries_reproduced");

  for (const auto& name : order) {
    const Check& c = merged.at(name);
    audit.checks.push_back(c);
    if (!c.passed) {
      audit.discrepancies.push_back(Discrepancy{"check." + c.name, "pass", "fail: " + c.detail, Severity::Unresolved});
    }
  }
  if (!stable) {
    for (const auto& r : per_draw)
      for (const auto& d : r.discrepancies)
        if (std::find(audit.discrepancies.begin(), audit.discrepancies.end(), d) == audit.discrepancies.end()) {
          audit.discrepancies.push_back(Discrepancy{d.location, d.paper_value, d.derived_value, Severity::Unresolved});
        }
  }
  std::stable_sort(audit.discrepancies.begin(), audit.discrepancies.end(),
                   [](const Discrepancy& a, const Discrepancy& b) { return a.location < b.location; });
  return audit;
}

}  // namespace jrsp
