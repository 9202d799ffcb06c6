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

#include <algorithm>
#include <complex>

#include "jrsp/mobv_bases.hpp"
#include "jrsp/qudit_linalg.hpp"
#include "oracles/oracle.hpp"

namespace testing {

inline jrsp::ShareVector share(const oracle::Share& s, int sender) {
  return jrsp::ShareVector::from_components(s, sender);
}

inline oracle::Vec vec(const jrsp::PureState& state) {
  return oracle::Vec(state.amplitudes().begin(), state.amplitudes().end());
}

inline double max_diff(const oracle::Vec& a, const oracle::Vec& b) {
  double worst = a.size() == b.size() ? 0.0 : 1e300;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace testing
