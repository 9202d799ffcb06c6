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
#include <vector>

#include "jrsp/mobv_bases.hpp"
#include "jrsp/qudit_linalg.hpp"

namespace jrsp {

/// The state Bob should end up with: the renormalized elementwise product of
/// the two shares, placed on |t> (arity 1) or |t,t> (arity 2).
struct TargetState {
  int arity;
  PureState amplitudes;
  double product_norm;  ///< norm of the raw elementwise product
  std::array<double, 4> raw_product;
};

/// Throws Error("degenerate factorization: protocol undefined") when the
/// elementwise product vanishes.
TargetState target_state(const ShareVector& share1, const ShareVector& share2, int arity,
                         std::vector<int> bob_labels);
TargetState target_state(const ShareVector& share1, const ShareVector& share2, int arity);

}  // namespace jrsp
