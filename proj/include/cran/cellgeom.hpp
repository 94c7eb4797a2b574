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

// 19-cell hexagonal layout and large-scale propagation.
//
// Cells are flat-topped hexagons with cell 1 at the origin. Cell ids are
// 1-based in the public interface: 1 is the center, 2-7 the inner ring
// (counter-clockwise from 30 degrees) and 8-19 the outer ring
// (counter-clockwise from 0 degrees), so that the outer-ring cells at
// distance sqrt(3) * ISD carry even ids. Each macro site sits at its cell
// center and drives three sector antennas.

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace cran {

using Rng = std::mt19937_64;

/// Mixes a master seed with stream indices (splitmix64 finalizer chain).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(Vec2 a, Vec2 b);

enum class Band { B1, B2, B3 };
enum class Reuse { Full, OneThird };

inline constexpr int kNumCells = 19;
inline constexpr int kSectorsPerSite = 3;

/// Link budget defaults of the standard macro/pico evaluation scenario.
struct PropagationParams {
  double macro_pl_intercept_db = 128.1;  // distance in km
  double macro_pl_slope_db = 37.6;
  double pico_pl_intercept_db = 38.0;  // distance in m
  double pico_pl_slope_db = 30.0;
  double theta_3db_deg = 65.0;
  double max_attenuation_db = 20.0;
  double macro_shadowing_db = 10.0;
  double pico_shadowing_db = 6.0;
  double macro_antenna_gain_dbi = 15.0;
  double pico_antenna_gain_dbi = 0.0;
  double ms_antenna_gain_dbi = 0.0;
  double macro_noise_figure_db = 5.0;
  double pico_noise_figure_db = 6.0;
  double ms_noise_figure_db = 9.0;
  double macro_tx_power_dbm = 46.0;
  double pico_tx_power_dbm = 24.0;
  double ms_tx_power_dbm = 23.0;
  double bandwidth_hz = 10e6;
  double inter_site_distance_m = 500.0;
  double min_macro_distance_m = 10.0;
  double min_pico_distance_m = 1.0;

  /// Throws ConfigError on non-finite values, theta_3db <= 0, ISD <= 0, or
  /// bandwidth <= 0.
  void validate() const;
};

struct Topology {
  std::vector<Vec2> macro_sites;                              // index = cell id - 1
  std::vector<std::array<double, kSectorsPerSite>> sector_boresights_deg;
  std::vector<std::vector<Vec2>> pico_positions;              // N per cell
  std::vector<std::vector<Vec2>> ms_positions;                // K per cell
  double inter_site_distance = 0.0;
  std::vector<Band> reuse_band;                               // per cell
  Reuse reuse = Reuse::OneThird;
  std::vector<int> interferer_set;                            // 1-based ids co-band with cell 1

  int num_cells() const { return static_cast<int>(macro_sites.size()); }
};

/// Center of cell `cell_id` (1-based) for the given inter-site distance.
Vec2 cell_center(int cell_id, double inter_site_distance);

/// True when `p` lies inside (or on) the hexagon of the cell centered at
/// `center`.
bool inside_hexagon(Vec2 p, Vec2 center, double inter_site_distance);

/// Frequency band of a cell under reuse 1/3 (B1 for cell 1 and its six
/// nearest co-band cells).
Band reuse_band_of(int cell_id);

/// Cell ids (1-based) that share cell 1's band.
std::vector<int> interferers_of_cell1(Reuse reuse);

/// Drops K MSs and N picos uniformly in every cell. Deterministic in `seed`.
Topology build_layout(std::uint64_t seed, int K, int N, const PropagationParams& params,
                      Reuse reuse = Reuse::OneThird);

double pathloss_macro_db(double distance_km, const PropagationParams& params = {});
double pathloss_pico_db(double distance_m, const PropagationParams& params = {});

/// -min(12 (theta / theta_3dB)^2, A_m) for an offset already normalized to
/// [-180, 180] degrees.
double sector_gain_db(double offset_deg, const PropagationParams& params = {});

/// Wraps an angle to [-180, 180).
double wrap_degrees(double deg);

enum class LinkClass { Macro, Pico };

/// Zero-mean Gaussian shadowing with the class standard deviation (dB).
double shadowing_db(LinkClass link, const PropagationParams& params, Rng& rng);

enum class NodeKind { MacroSector, Pico, Mobile };

struct Node {
  NodeKind kind = NodeKind::Mobile;
  Vec2 position;
  double boresight_deg = 0.0;  // macro sectors only
};

/// Large-scale gain in dB (path loss, antenna pattern, antenna gains and the
/// supplied shadowing) between a BS-side node and a mobile. The link class is
/// the class of the BS endpoint; the sector pattern applies whenever a macro
/// sector is an endpoint. Distances below the class minimum are clamped;
/// coincident positions throw std::domain_error.
double link_gain_db(const Node& a, const Node& b, const PropagationParams& params, double shadowing);

/// link_gain_db with freshly drawn shadowing, converted to a linear power gain.
double link_gain_linear(const Node& a, const Node& b, const PropagationParams& params, Rng& rng);

double db_to_linear(double db);
double dbm_to_watts(double dbm);

}  // namespace cran
