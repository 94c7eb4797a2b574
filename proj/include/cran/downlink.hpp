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

// Downlink precoding with backhaul compression: x = A s + q, q ~ CN(0, Omega).
// Point-to-point compression keeps Omega diagonal; multivariate compression
// correlates the quantization noise across BSs, subject to one backhaul
// constraint per BS subset.

#pragma once

#include "cran/channel.hpp"
#include "cran/gaussinfo.hpp"
#include "cran/mmopt.hpp"
#include "cran/uplink.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cran {

inline constexpr int kMaxSubsetBs = 16;

struct DownlinkDesign {
  CMatrix a;            // N_B x N_M precoder, column k serves MS k
  CMatrix omega;        // N_B x N_B quantization covariance
  RVector capacity;     // bps/Hz; 0 marks a BS inactive (zero row and column)
  RVector power_limit;  // W
  CompressionMode mode = CompressionMode::Multiterminal;

  int num_bs() const { return static_cast<int>(a.rows()); }
};

/// log2(e_i^H A A^H e_i + omega_ii) - log2(omega_ii).
double backhaul_p2p_dl(const DownlinkDesign& design, int bs);

/// sum_{i in S} log2(e_i^H A A^H e_i + omega_ii) - logdet2(Omega_S), with S
/// given as a bit mask over BS indices.
double backhaul_mv_dl(const DownlinkDesign& design, std::uint32_t subset);
double backhaul_mv_dl(const DownlinkDesign& design, const std::vector<int>& subset);

/// I(s_k; y_k) with the other streams and the quantization noise as noise.
double rate_dl(const DownlinkDesign& design, const ChannelRealization& ch, int k);
RVector rates_dl(const DownlinkDesign& design, const ChannelRealization& ch);

struct FeasibilityReport {
  bool feasible = true;
  /// Smallest margin over all constraints: sum_S C - g_S in bps/Hz for the
  /// backhaul, (P_i - used_i) / P_i for the power.
  double worst_margin = 0.0;
  std::string binding;  // the constraint attaining worst_margin
  int subset_checks = 0;
  int power_checks = 0;
};

/// Checks every backhaul subset constraint over the active BSs and every
/// per-BS power constraint; feasible when worst_margin >= -tol. Throws
/// std::length_error for more than kMaxSubsetBs BSs.
FeasibilityReport feasible_dl(const DownlinkDesign& design, double tol = 1e-9);

inline MMOptions downlink_mm_defaults() {
  MMOptions mm;
  mm.inner.method = InnerMethod::LBFGS;
  return mm;
}

struct DownlinkOptions {
  MMOptions mm = downlink_mm_defaults();
  double barrier_initial = 1e-2;
  double barrier_decay = 0.5;
  double barrier_floor = 1e-8;
};

struct DownlinkResult {
  DownlinkDesign design;
  RVector rates;
  double objective = 0.0;
  MMTrace trace;
  bool warning = false;  // MM hit max_iter
};

/// Maximizes sum_k w_k rate_dl over (A, Omega) by MM. Starts from `init` when
/// given (for instance a point-to-point solution), else from scaled
/// maximum-ratio precoding with diagonal Omega.
DownlinkResult optimize_dl(const ChannelRealization& ch, const RVector& capacity, const RVector& power_limit,
                           const RVector& weights, CompressionMode mode, const DownlinkOptions& options = {},
                           const DownlinkDesign* init = nullptr);

}  // namespace cran
