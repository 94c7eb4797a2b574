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

// Uplink backhaul compression: each BS forwards y_i + q_i with q_i ~ CN(0,
// omega_i). Point-to-point decompression recovers every description on its
// own; Wyner-Ziv decompression recovers them in order `order`, using the
// descriptions already recovered as side information.

#pragma once

#include "cran/channel.hpp"
#include "cran/gaussinfo.hpp"
#include "cran/mmopt.hpp"

#include <vector>

namespace cran {

enum class CompressionMode { PointToPoint, Multiterminal };

const char* to_string(CompressionMode mode);

struct UplinkDesign {
  RVector p;               // MS transmit powers (W)
  RVector omega;           // quantization noise powers (W); ignored for inactive BSs
  std::vector<int> order;  // decompression order over active BSs
  RVector capacity;        // backhaul capacities (bps/Hz); 0 marks a BS inactive
  CompressionMode mode = CompressionMode::Multiterminal;

  bool active(int bs) const { return capacity(bs) > 0.0; }
};

/// Variance of y_target given the descriptions of the BSs in `side` (with
/// their quantization noise `omega`). An empty `side` gives sigma^2_y.
double conditional_variance_ul(const RVector& p, const ChannelRealization& ch, const RVector& omega,
                               const std::vector<int>& side, int target);

/// I(y_i; yhat_i) = log2(omega_i + sigma^2_{y_i}) - log2(omega_i).
double backhaul_p2p(const UplinkDesign& design, const ChannelRealization& ch, int bs);

/// Conditional mutual information of the description at `position` (0-based)
/// of design.order given the descriptions earlier in the order.
double backhaul_wz(const UplinkDesign& design, const ChannelRealization& ch, int position);

/// Quantization noise powers meeting every backhaul constraint with
/// equality, fixed sequentially along `order`. Inactive BSs get omega = 0.
/// Throws std::domain_error if `order` names a BS with C <= 0.
RVector omega_closed_form(const RVector& p, const std::vector<int>& order, const RVector& capacity,
                          const ChannelRealization& ch, CompressionMode mode);

/// I(x_k; yhat) over the active BSs with the other MSs treated as noise.
double rate_ul(const UplinkDesign& design, const ChannelRealization& ch, int k);

RVector rates_ul(const UplinkDesign& design, const ChannelRealization& ch);

/// Active macro sectors by descending sigma^2_y, then active picos by index.
std::vector<int> decompression_order(const RVector& p, const ChannelRealization& ch, const RVector& capacity);

struct UplinkOptions {
  MMOptions mm;
};

struct UplinkResult {
  UplinkDesign design;
  RVector rates;            // achieved with the compressed descriptions
  double objective = 0.0;   // weighted sum of `rates`
  RVector ideal_rates;      // with omega = 0 (step 1)
  double ideal_objective = 0.0;
  MMTrace trace;
  bool warning = false;     // MM hit max_iter
};

/// Two-step design: powers by MM on the ideal-backhaul weighted sum-rate
/// (starting from full power), then omega_closed_form.
UplinkResult optimize_ul(const ChannelRealization& ch, const RVector& capacity, const RVector& weights,
                         CompressionMode mode, const UplinkOptions& options = {});

}  // namespace cran
