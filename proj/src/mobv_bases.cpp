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

#include "jrsp/mobv_bases.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace jrsp {

ShareVector ShareVector::from_components(std::array<double, 4> components, int sender, double tolerance) {
  if (sender != 1 && sender != 2) throw Error("sender id must be 1 or 2");
  double n2 = 0.0;
  for (double c : components) {
    if (!std::isfinite(c)) throw Error("share component is not finite");
    n2 += c * c;
  }
  if (std::abs(n2 - 1.0) > tolerance) throw Error("share not normalized");
  const double n = std::sqrt(n2);
  for (double& c : components) c /= n;
  return ShareVector(components, sender);
}

ShareVector parse_share(std::string_view text, int sender) {
  std::array<double, 4> values{};
  std::size_t count = 0;
  std::size_t pos = 0;
  auto is_sep = [](char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); };
  while (pos < text.size()) {
    while (pos < text.size() && is_sep(text[pos])) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !is_sep(text[end])) ++end;
    if (count == 4) throw Error("share must have exactly four components");
    const std::string token(text.substr(pos, end - pos));
    double v = 0.0;
    const char* first = token.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw Error("cannot parse share component '" + token + "'");
    }
    values[count++] = v;
    pos = end;
  }
  if (count != 4) throw Error("share must have exactly four components");
  return ShareVector::from_components(values, sender);
}

bool is_generic(const ShareVector& share, double min_gap) {
  const auto& c = share.components();
  for (std::size_t i = 0; i < 4; ++i) {
    if (std::abs(c[i]) < min_gap) return false;
    for (std::size_t j = i + 1; j < 4; ++j)
      if (std::abs(std::abs(c[i]) - std::abs(c[j])) < min_gap) return false;
  }
  return true;
}

ShareVector random_generic_share(std::mt19937_64& rng, int sender) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    std::array<double, 4> v{};
    double n2 = 0.0;
    for (double& x : v) {
      x = normal(rng);
      n2 += x * x;
    }
    if (n2 < 1e-12) continue;
    const double n = std::sqrt(n2);
    for (double& x : v) x /= n;
    auto share = ShareVector::from_components(v, sender);
    if (is_generic(share)) return share;
  }
}

SignPatternMatrix sign_pattern(const std::array<double, 4>& s) {
  return {{
      {s[0], s[1], s[2], s[3]},
      {s[1], -s[0], s[3], -s[2]},
      {-s[2], s[3], s[0], -s[1]},
      {-s[3], -s[2], s[1], s[0]},
  }};
}

MeasurementBasis::MeasurementBasis(int arity, std::vector<PureState> vectors)
    : arity_(arity), vectors_(std::move(vectors)) {
  if (arity_ != 1 && arity_ != 2) throw Error("basis arity must be 1 or 2");
  const std::size_t expected = arity_ == 1 ? 4 : 16;
  if (vectors_.size() != expected) throw Error("basis must have 4^arity vectors");
  for (const auto& v : vectors_) {
    if (v.layout().size() != static_cast<std::size_t>(arity_)) throw Error("basis vector arity mismatch");
  }
}

const PureState& MeasurementBasis::vector(int g, int h) const {
  if (arity_ != 2) throw Error("(g,h) indexing requires a two-qudit basis");
  if (g < 0 || g > 3 || h < 0 || h > 3) throw Error("basis index out of range");
  return vectors_[static_cast<std::size_t>(4 * g + h)];
}

MeasurementBasis MeasurementBasis::relabeled(const std::vector<int>& labels) const {
  std::vector<PureState> out;
  out.reserve(vectors_.size());
  for (const auto& v : vectors_) out.push_back(v.relabeled(labels));
  return MeasurementBasis(arity_, std::move(out));
}

MeasurementBasis basis_from_pattern(const SignPatternMatrix& pattern, int arity, std::vector<int> labels) {
  if (labels.size() != static_cast<std::size_t>(arity)) throw Error("label count must equal basis arity");
  RegisterLayout layout(std::move(labels));
  std::vector<PureState> vectors;
  if (arity == 1) {
    for (int g = 0; g < 4; ++g) {
      std::vector<Amplitude> amps(4);
      for (int t = 0; t < 4; ++t) amps[t] = pattern[g][t];
      vectors.emplace_back(layout, std::move(amps));
    }
  } else if (arity == 2) {
    for (int g = 0; g < 4; ++g)
      for (int h = 0; h < 4; ++h) {
        std::vector<Amplitude> amps(16);
        for (int t = 0; t < 4; ++t) amps[4 * t + (t + h) % 4] = pattern[g][t];
        vectors.emplace_back(layout, std::move(amps));
      }
  } else {
    throw Error("basis arity must be 1 or 2");
  }
  return MeasurementBasis(arity, std::move(vectors));
}

MeasurementBasis build_mobv1(const ShareVector& share, std::vector<int> labels) {
  return basis_from_pattern(sign_pattern(share.components()), 1, std::move(labels));
}

MeasurementBasis build_mobv2(const ShareVector& share, std::vector<int> labels) {
  return basis_from_pattern(sign_pattern(share.components()), 2, std::move(labels));
}

Matrix gram(const MeasurementBasis& basis) {
  const std::size_t n = basis.size();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = inner(basis.vector(i), basis.vector(j));
  return g;
}

}  // namespace jrsp
