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

#include "jrsp/target.hpp"

#include <cmath>

namespace jrsp {

TargetState target_state(const ShareVector& share1, const ShareVector& share2, int arity,
                         std::vector<int> bob_labels) {
  if (arity != 1 && arity != 2) throw Error("target arity must be 1 or 2");
  if (bob_labels.size() != static_cast<std::size_t>(arity)) throw Error("bob label count must equal arity");

  std::array<double, 4> raw{};
  double n2 = 0.0;
  for (std::size_t t = 0; t < 4; ++t) {
    raw[t] = share1[t] * share2[t];
    n2 += raw[t] * raw[t];
  }
  if (n2 == 0.0) throw Error("degenerate factorization: protocol undefined");
  const double n = std::sqrt(n2);

  RegisterLayout layout(std::move(bob_labels));
  std::vector<Amplitude> amps(layout.dimension());
  for (std::size_t t = 0; t < 4; ++t) amps[arity == 1 ? t : 5 * t] = raw[t] / n;
  return TargetState{arity, PureState(std::move(layout), std::move(amps)), n, raw};
}

TargetState target_state(const ShareVector& share1, const ShareVector& share2, int arity) {
  return target_state(share1, share2, arity, arity == 1 ? std::vector<int>{3} : std::vector<int>{3, 6});
}

}  // namespace jrsp
