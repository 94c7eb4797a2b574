// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The cranmt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Proportional-fair weights with exponentially smoothed average rates.

#pragma once

#include "cran/gaussinfo.hpp"

namespace cran {

inline constexpr double kInitialAverageRate = 1e-3;  // bps/Hz
inline constexpr double kAverageRateFloor = 1e-6;    // bps/Hz

struct FairnessState {
  RVector r_bar;       // per-MS average rate, > 0
  double alpha = 0.0;  // fairness exponent
  double beta = 0.5;   // forgetting factor
  int slot = 0;

  /// Every MS starts at kInitialAverageRate.
  static FairnessState initial(int num_ms, double alpha, double beta);

  /// Throws std::domain_error when alpha < 0, beta outside [0, 1] or some
  /// average rate is not positive.
  void validate() const;
};

/// w_k = 1 / r_bar_k^alpha.
RVector weights(const FairnessState& state);

/// r_bar <- beta r_bar + (1 - beta) rates, floored at kAverageRateFloor.
FairnessState update(const FairnessState& state, const RVector& achieved_rates);

}  // namespace cran
