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

#include "cran/cellgeom.hpp"

#include "cran/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cran {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw ConfigError(std::string("propagation parameter ") + name + " is not finite");
}

Vec2 uniform_in_cell(Vec2 center, double isd, Rng& rng) {
  const double radius = isd / std::numbers::sqrt3;
  std::uniform_real_distribution<double> ux(-radius, radius);
  std::uniform_real_distribution<double> uy(-0.5 * isd, 0.5 * isd);
  for (;;) {
    const Vec2 p{center.x + ux(rng), center.y + uy(rng)};
    if (inside_hexagon(p, center, isd)) return p;
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ a);
  s = splitmix64(s ^ b);
  return splitmix64(s ^ c);
}

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

void PropagationParams::validate() const {
  const double values[] = {macro_pl_intercept_db, macro_pl_slope_db,     pico_pl_intercept_db,
                           pico_pl_slope_db,      theta_3db_deg,         max_attenuation_db,
                           macro_shadowing_db,    pico_shadowing_db,     macro_antenna_gain_dbi,
                           pico_antenna_gain_dbi, ms_antenna_gain_dbi,   macro_noise_figure_db,
                           pico_noise_figure_db,  ms_noise_figure_db,    macro_tx_power_dbm,
                           pico_tx_power_dbm,     ms_tx_power_dbm,       bandwidth_hz,
                           inter_site_distance_m, min_macro_distance_m,  min_pico_distance_m};
  for (double v : values) require_finite(v, "value");
  if (theta_3db_deg <= 0.0) throw ConfigError("theta_3db must be positive");
  if (inter_site_distance_m <= 0.0) throw ConfigError("inter-site distance must be positive");
  if (bandwidth_hz <= 0.0) throw ConfigError("bandwidth must be positive");
  if (macro_shadowing_db < 0.0 || pico_shadowing_db < 0.0) throw ConfigError("shadowing stddev must be >= 0");
  if (min_macro_distance_m < 0.0 || min_pico_distance_m < 0.0) throw ConfigError("minimum distances must be >= 0");
  if (min_macro_distance_m >= 0.5 * inter_site_distance_m) {
    throw ConfigError("minimum macro distance must be below half the inter-site distance");
  }
}

Vec2 cell_center(int cell_id, double isd) {
  if (cell_id < 1 || cell_id > kNumCells) throw std::out_of_range("cell id out of range: " + std::to_string(cell_id));
  if (cell_id == 1) return {0.0, 0.0};
  if (cell_id <= 7) {
    const double a = (30.0 + 60.0 * (cell_id - 2)) * kDeg;
    return {isd * std::cos(a), isd * std::sin(a)};
  }
  const int k = cell_id - 8;
  const double r = (k % 2 == 0) ? std::numbers::sqrt3 * isd : 2.0 * isd;
  const double a = 30.0 * k * kDeg;
  return {r * std::cos(a), r * std::sin(a)};
}

bool inside_hexagon(Vec2 p, Vec2 center, double isd) {
  const double dx = p.x - center.x;
  const double dy = p.y - center.y;
  const double apothem = 0.5 * isd * (1.0 + 1e-12);
  for (int k = 0; k < 6; ++k) {
    const double a = (30.0 + 60.0 * k) * kDeg;
    if (dx * std::cos(a) + dy * std::sin(a) > apothem) return false;
  }
  return true;
}

Band reuse_band_of(int cell_id) {
  // Lattice coordinates in the basis u = (cos 30, sin 30), v = (0, 1).
  const Vec2 c = cell_center(cell_id, 1.0);
  const long a = std::lround(c.x / std::cos(30.0 * kDeg));
  const long b = std::lround(c.y - 0.5 * static_cast<double>(a));
  const long m = ((a - b) % 3 + 3) % 3;
  return static_cast<Band>(m);
}

std::vector<int> interferers_of_cell1(Reuse reuse) {
  std::vector<int> ids;
  for (int id = 2; id <= kNumCells; ++id) {
    if (reuse == Reuse::Full || reuse_band_of(id) == reuse_band_of(1)) ids.push_back(id);
  }
  return ids;
}

Topology build_layout(std::uint64_t seed, int K, int N, const PropagationParams& params, Reuse reuse) {
  if (K < 1) throw ConfigError("K must be at least 1");
  if (N < 0) throw ConfigError("N must be non-negative");
  params.validate();

  const double isd = params.inter_site_distance_m;
  Topology topo;
  topo.inter_site_distance = isd;
  topo.reuse = reuse;
  topo.interferer_set = interferers_of_cell1(reuse);

  Rng rng(derive_seed(seed, 0x6c61796f7574ULL));
  for (int id = 1; id <= kNumCells; ++id) {
    const Vec2 site = cell_center(id, isd);
    topo.macro_sites.push_back(site);
    topo.sector_boresights_deg.push_back({30.0, 150.0, 270.0});
    topo.reuse_band.push_back(reuse_band_of(id));

    std::vector<Vec2> picos;
    picos.reserve(static_cast<std::size_t>(N));
    while (static_cast<int>(picos.size()) < N) {
      const Vec2 p = uniform_in_cell(site, isd, rng);
      if (distance(p, site) >= params.min_macro_distance_m) picos.push_back(p);
    }
    std::vector<Vec2> mobiles;
    mobiles.reserve(static_cast<std::size_t>(K));
    while (static_cast<int>(mobiles.size()) < K) {
      const Vec2 p = uniform_in_cell(site, isd, rng);
      if (distance(p, site) < params.min_macro_distance_m) continue;
      const bool near_pico = std::any_of(picos.begin(), picos.end(), [&](Vec2 q) {
        return distance(p, q) < params.min_pico_distance_m;
      });
      if (!near_pico) mobiles.push_back(p);
    }
    topo.pico_positions.push_back(std::move(picos));
    topo.ms_positions.push_back(std::move(mobiles));
  }
  return topo;
}

double pathloss_macro_db(double distance_km, const PropagationParams& params) {
  if (!(distance_km > 0.0)) throw std::domain_error("pathloss_macro_db: distance must be positive");
  return params.macro_pl_intercept_db + params.macro_pl_slope_db * std::log10(distance_km);
}

double pathloss_pico_db(double distance_m, const PropagationParams& params) {
  if (!(distance_m > 0.0)) throw std::domain_error("pathloss_pico_db: distance must be positive");
  return params.pico_pl_intercept_db + params.pico_pl_slope_db * std::log10(distance_m);
}

double sector_gain_db(double offset_deg, const PropagationParams& params) {
  const double r = offset_deg / params.theta_3db_deg;
  return -std::min(12.0 * r * r, params.max_attenuation_db);
}

double wrap_degrees(double deg) {
  double w = std::fmod(deg + 180.0, 360.0);
  if (w < 0.0) w += 360.0;
  return w - 180.0;
}

double shadowing_db(LinkClass link, const PropagationParams& params, Rng& rng) {
  const double sd = link == LinkClass::Macro ? params.macro_shadowing_db : params.pico_shadowing_db;
  std::normal_distribution<double> dist(0.0, 1.0);
  return sd * dist(rng);
}

double link_gain_db(const Node& a, const Node& b, const PropagationParams& params, double shadowing) {
  const bool a_mobile = a.kind == NodeKind::Mobile;
  const bool b_mobile = b.kind == NodeKind::Mobile;
  if (a_mobile == b_mobile) throw std::invalid_argument("link_gain_db: expects one BS and one mobile endpoint");
  const Node& bs = a_mobile ? b : a;
  const Node& ms = a_mobile ? a : b;

  double d = distance(bs.position, ms.position);
  if (!(d > 0.0)) throw std::domain_error("link_gain_db: coincident positions");

  double gain = shadowing + params.ms_antenna_gain_dbi;
  if (bs.kind == NodeKind::MacroSector) {
    d = std::max(d, params.min_macro_distance_m);
    const double bearing = std::atan2(ms.position.y - bs.position.y, ms.position.x - bs.position.x) / kDeg;
    gain += -pathloss_macro_db(d / 1000.0, params) + params.macro_antenna_gain_dbi +
            sector_gain_db(wrap_degrees(bearing - bs.boresight_deg), params);
  } else {
    d = std::max(d, params.min_pico_distance_m);
    gain += -pathloss_pico_db(d, params) + params.pico_antenna_gain_dbi;
  }
  return gain;
}

double link_gain_linear(const Node& a, const Node& b, const PropagationParams& params, Rng& rng) {
  const Node& bs = a.kind == NodeKind::Mobile ? b : a;
  const LinkClass cls = bs.kind == NodeKind::MacroSector ? LinkClass::Macro : LinkClass::Pico;
  return db_to_linear(link_gain_db(a, b, params, shadowing_db(cls, params, rng)));
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace cran
