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

// Per-slot channel realizations for the cluster of cell 1.
//
// The cluster's BSs are the three sector antennas of site 1 followed by the
// N picos of cell 1; its MSs are the K mobiles of cell 1. Traffic from every
// other co-band cell is folded into the per-node noise variances.

#pragma once

#include "cran/cellgeom.hpp"
#include "cran/gaussinfo.hpp"

#include <vector>

namespace cran {

enum class Direction { Uplink, Downlink };

/// Large-scale state of one drop: positions plus every link gain, fixed for
/// all slots of the drop.
struct Drop {
  Topology topology;
  std::vector<Node> cluster_bs;  // sectors of site 1, then picos of cell 1
  std::vector<Node> cluster_ms;  // mobiles of cell 1
  RVector bs_tx_power_w;         // per cluster BS
  RVector bs_noise_figure_db;    // per cluster BS
  double ms_tx_power_w = 0.0;

  RMatrix gain;  // N_B x K linear power gain between cluster BSs and MSs

  // Downlink interferers: every sector and pico of cells 2..19.
  std::vector<int> dl_source_cell;  // 1-based cell id
  RVector dl_source_power_w;
  RMatrix dl_interference_gain;  // K x sources

  // Uplink interferers: every mobile of cells 2..19.
  std::vector<int> ul_source_cell;
  std::vector<int> ul_source_sector;
  RMatrix ul_interference_gain;  // N_B x sources

  int num_bs() const { return static_cast<int>(cluster_bs.size()); }
  int num_ms() const { return static_cast<int>(cluster_ms.size()); }
};

/// Draws shadowing for every link touching the cluster (one draw per link).
Drop prepare_drop(Topology topology, const PropagationParams& params, Rng& rng);

struct ChannelRealization {
  CMatrix h_ul;      // N_B x N_M; y_ul = h_ul x + z
  CMatrix h_dl;      // N_M x N_B; row k is h_k^H, y_dl = h_dl x + z
  RVector noise_ul;  // per BS, Watts
  RVector noise_dl;  // per MS, Watts
  int slot = 0;
  std::vector<NodeKind> bs_kind;
  RVector bs_max_power_w;
  RVector ms_max_power_w;

  int num_bs() const { return static_cast<int>(h_ul.rows()); }
  int num_ms() const { return static_cast<int>(h_ul.cols()); }
};

/// Thermal noise power (W) at -174 dBm/Hz over the bandwidth plus the figure.
double thermal_noise_w(double noise_figure_db, double bandwidth_hz);

/// Unit-variance circularly-symmetric complex Gaussian sample.
cplx complex_normal(Rng& rng);

/// Thermal noise plus the received power of all co-band interferers (full
/// power, fresh Rayleigh fades) at cluster BS `index` (uplink) or cluster MS
/// `index` (downlink). Consumes the same random numbers regardless of the
/// reuse setting.
double effective_noise_variance(const Drop& drop, const PropagationParams& params, Direction dir, int index,
                                Rng& rng);

/// Independent Rayleigh fades on top of the drop's large-scale gains, plus
/// the effective noise variances for this slot.
ChannelRealization realize_channel(const Drop& drop, const PropagationParams& params, int slot, Rng& rng);

}  // namespace cran
