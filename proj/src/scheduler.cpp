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

#include "cran/scheduler.hpp"

#include <cmath>
#include <stdexcept>

namespace cran {

FairnessState FairnessState::initial(int num_ms, double alpha, double beta) {
  FairnessState s;
  s.r_bar = RVector::Constant(num_ms, kInitialAverageRate);
  s.alpha = alpha;
  s.beta = beta;
  s.validate();
  return s;
}

void FairnessState::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::domain_error("fairness exponent must be >= 0");
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::domain_error("forgetting factor must lie in [0, 1]");
  if (!(r_bar.array() > 0.0).all()) throw std::domain_error("average rates must be positive");
}

RVector weights(const FairnessState& state) {
  if (state.alpha == 0.0) return RVector::Ones(state.r_bar.size());
  return state.r_bar.array().pow(-state.alpha).matrix();
}

FairnessState update(const FairnessState& state, const RVector& achieved_rates) {
  if (achieved_rates.size() != state.r_bar.size()) throw std::invalid_argument("update: rate vector has wrong size");
  if ((achieved_rates.array() < 0.0).any()) throw std::domain_error("update: achieved rates must be >= 0");
  FairnessState next = state;
  next.r_bar = (state.beta * state.r_bar + (1.0 - state.beta) * achieved_rates).cwiseMax(kAverageRateFloor);
  ++next.slot;
  return next;
}

}  // namespace cran
