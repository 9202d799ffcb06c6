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

// Brute-force reference computations for the tests. Nothing here calls the
// library: channels are closed-form delta functions, basis vectors come from
// the sign listing, and projections are explicit sums over every register
// configuration.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

using Share = std::array<double, 4>;
using Vec = std::vector<std::complex<double>>;

// Basis row g as a listing of (sign, component) pairs.
inline std::array<double, 4> row(const Share& s, int g) {
  switch (g) {
    case 0: return {s[0], s[1], s[2], s[3]};
    case 1: return {s[1], -s[0], s[3], -s[2]};
    case 2: return {-s[2], s[3], s[0], -s[1]};
    default: return {-s[3], -s[2], s[1], s[0]};
  }
}

inline double basis1(const Share& s, int j, int t) { return row(s, j)[static_cast<std::size_t>(t)]; }

inline double basis2(const Share& s, int index, int x, int y) {
  const int g = index / 4;
  const int h = index % 4;
  return y == (x + h) % 4 ? row(s, g)[static_cast<std::size_t>(x)] : 0.0;
}

struct Layout {
  int particles;
  std::vector<int> alice1;
  std::vector<int> alice2;
  std::vector<int> bob;
};

// 1: single GHZ; 2: two GHZ; 3: three EPR pairs.
inline Layout layout(int protocol) {
  if (protocol == 1) return {3, {1}, {2}, {3}};
  if (protocol == 2) return {6, {1, 4}, {2, 5}, {3, 6}};
  return {6, {1, 3}, {2, 5}, {4, 6}};
}

// d[label] for labels 1..6.
inline double channel(int protocol, const std::array<int, 7>& d) {
  auto ghz = [&](int a, int b, int c) { return d[a] == d[b] && d[b] == d[c] ? 0.5 : 0.0; };
  auto epr = [&](int a, int b) { return d[a] == d[b] ? 0.5 : 0.0; };
  if (protocol == 1) return ghz(1, 2, 3);
  if (protocol == 2) return ghz(1, 2, 3) * ghz(4, 5, 6);
  return epr(1, 2) * epr(3, 4) * epr(5, 6);
}

inline double sender_amp(const Share& s, const std::vector<int>& labels, int index, const std::array<int, 7>& d) {
  return labels.size() == 1 ? basis1(s, index, d[labels[0]]) : basis2(s, index, d[labels[0]], d[labels[1]]);
}

// Unnormalized Bob state after both senders project; Bob's digits in label order.
inline Vec branch(int protocol, const Share& s1, const Share& s2, int a1, int a2) {
  const Layout L = layout(protocol);
  Vec out(L.bob.size() == 1 ? 4 : 16);
  std::array<int, 7> d{};
  const long total = L.particles == 3 ? 64 : 4096;
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int label = L.particles; label >= 1; --label) {
      d[static_cast<std::size_t>(label)] = static_cast<int>(c % 4);
      c /= 4;
    }
    const double ch = channel(protocol, d);
    if (ch == 0.0) continue;
    const double a = sender_amp(s1, L.alice1, a1, d) * sender_amp(s2, L.alice2, a2, d);
    std::size_t bob = 0;
    for (int label : L.bob) bob = bob * 4 + static_cast<std::size_t>(d[static_cast<std::size_t>(label)]);
    out[bob] += a * ch;
  }
  return out;
}

inline int outcomes(int protocol) { return protocol == 1 ? 4 : 16; }

inline double norm2(const Vec& v) {
  double n = 0;
  for (auto x : v) n += std::norm(x);
  return n;
}

inline Vec normalized(Vec v) {
  const double n = std::sqrt(norm2(v));
  for (auto& x : v) x /= n;
  return v;
}

inline Vec target(const Share& s1, const Share& s2, int protocol) {
  Vec out(protocol == 1 ? 4 : 16);
  for (int t = 0; t < 4; ++t) out[static_cast<std::size_t>(protocol == 1 ? t : 5 * t)] = s1[t] * s2[t];
  return normalized(out);
}

inline double fidelity(const Vec& a, const Vec& b) {
  std::complex<double> ip;
  for (std::size_t i = 0; i < a.size(); ++i) ip += std::conj(a[i]) * b[i];
  return std::norm(ip);
}

// U_u|t> = |image(u)[t]>, read off the printed row matrices column by column.
inline std::array<int, 4> image(int u) {
  static const int rows[8][4][4] = {
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
      {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}},
      {{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}},
      {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}},
      {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}},
      {{0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}},
      {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}},
      {{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}},
  };
  std::array<int, 4> img{};
  for (int col = 0; col < 4; ++col)
    for (int r = 0; r < 4; ++r)
      if (rows[u][r][col] == 1) img[static_cast<std::size_t>(col)] = r;
  return img;
}

inline Vec correct(const Vec& v, int u_first, int u_second) {
  Vec out(v.size());
  if (v.size() == 4) {
    for (int t = 0; t < 4; ++t) out[static_cast<std::size_t>(image(u_first)[static_cast<std::size_t>(t)])] = v[static_cast<std::size_t>(t)];
    return out;
  }
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      out[static_cast<std::size_t>(4 * image(u_first)[static_cast<std::size_t>(x)] + image(u_second)[static_cast<std::size_t>(y)])] =
          v[static_cast<std::size_t>(4 * x + y)];
  return out;
}

// Best fidelity over all 8 or 64 assignments.
inline double best_fidelity(const Vec& collapsed, const Vec& goal) {
  double best = 0;
  const int second = collapsed.size() == 4 ? 1 : 8;
  for (int u = 0; u < 8; ++u)
    for (int w = 0; w < second; ++w) best = std::max(best, fidelity(correct(collapsed, u, w), goal));
  return best;
}

inline Share random_share(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    Share s{n(rng), n(rng), n(rng), n(rng)};
    const double len = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3]);
    for (auto& x : s) x /= len;
    bool ok = true;
    for (int i = 0; i < 4; ++i) {
      ok = ok && std::abs(s[i]) > 1e-2;
      for (int k = 0; k < i; ++k) ok = ok && std::abs(std::abs(s[i]) - std::abs(s[k])) > 1e-2;
    }
    if (ok) return s;
  }
}

}  // namespace oracle
