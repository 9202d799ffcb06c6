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

// Sender measurement bases built from a coefficient share.
//
// Every basis row g is a signed permutation of the share s = (s0, s1, s2, s3):
//
//     row 0: ( s0,  s1,  s2,  s3)
//     row 1: ( s1, -s0,  s3, -s2)
//     row 2: (-s2,  s3,  s0, -s1)
//     row 3: (-s3, -s2,  s1,  s0)
//
// The single-qudit basis places row g on |t>; the two-qudit basis with
// shift h places row g on |t, t+h mod 4>.

#include <array>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "jrsp/qudit_linalg.hpp"

namespace jrsp {

/// Accepted distance of a share's squared norm from 1 before it is renormalized.
inline constexpr double kShareNormTolerance = 1e-9;

/// Minimum separation between |components| (and from zero) for a share to
/// count as generic.
inline constexpr double kGenericGap = 1e-3;

/// One sender's real, unit-norm coefficient share.
class ShareVector {
 public:
  /// Renormalizes exactly when the squared norm is within `tolerance` of 1;
  /// otherwise throws Error("share not normalized").
  static ShareVector from_components(std::array<double, 4> components, int sender,
                                     double tolerance = kShareNormTolerance);

  const std::array<double, 4>& components() const noexcept { return components_; }
  double operator[](std::size_t i) const { return components_.at(i); }
  int sender() const noexcept { return sender_; }

  bool operator==(const ShareVector&) const = default;

 private:
  ShareVector(std::array<double, 4> components, int sender) : components_(components), sender_(sender) {}

  std::array<double, 4> components_;
  int sender_;
};

/// Parses "a,b,c,d" or "a b c d" (any mix of commas and whitespace).
ShareVector parse_share(std::string_view text, int sender);

/// All components nonzero and pairwise distinct in absolute value, with gap `min_gap`.
bool is_generic(const ShareVector& share, double min_gap = kGenericGap);

/// Uniform direction on the unit 3-sphere, redrawn until generic.
ShareVector random_generic_share(std::mt19937_64& rng, int sender);

/// Row g, column t: the coefficient of |t> (or |t, t+h>) in basis row g.
using SignPatternMatrix = std::array<std::array<double, 4>, 4>;

SignPatternMatrix sign_pattern(const std::array<double, 4>& components);

/// A complete family of basis vectors on one or two particles.
class MeasurementBasis {
 public:
  MeasurementBasis(int arity, std::vector<PureState> vectors);

  int arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  const std::vector<PureState>& vectors() const noexcept { return vectors_; }
  /// Flat index: j for arity 1, 4*g + h for arity 2.
  const PureState& vector(std::size_t index) const { return vectors_.at(index); }
  const PureState& vector(int g, int h) const;

  /// Same vectors on new particle labels.
  MeasurementBasis relabeled(const std::vector<int>& labels) const;

 private:
  int arity_;
  std::vector<PureState> vectors_;
};

/// Builds the basis of the given arity from any pattern matrix; no normalization checks.
MeasurementBasis basis_from_pattern(const SignPatternMatrix& pattern, int arity, std::vector<int> labels);

MeasurementBasis build_mobv1(const ShareVector& share, std::vector<int> labels = {1});
MeasurementBasis build_mobv2(const ShareVector& share, std::vector<int> labels = {1, 2});

/// Gram matrix G(i, j) = <v_i|v_j>.
Matrix gram(const MeasurementBasis& basis);

}  // namespace jrsp
