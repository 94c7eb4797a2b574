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

#include "cran/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cran {

namespace {

std::vector<bool> co_band_mask(const Topology& topo) {
  std::vector<bool> mask(static_cast<std::size_t>(kNumCells) + 1, false);
  for (int id : topo.interferer_set) mask.at(static_cast<std::size_t>(id)) = true;
  return mask;
}

int serving_sector(const Topology& topo, int cell_index, Vec2 p) {
  const Vec2 site = topo.macro_sites[static_cast<std::size_t>(cell_index)];
  const double bearing = std::atan2(p.y - site.y, p.x - site.x) * 180.0 / std::numbers::pi;
  int best = 0;
  double best_offset = 1e9;
  for (int s = 0; s < kSectorsPerSite; ++s) {
    const double off =
        std::abs(wrap_degrees(bearing - topo.sector_boresights_deg[static_cast<std::size_t>(cell_index)][s]));
    if (off < best_offset) {
      best_offset = off;
      best = s;
    }
  }
  return best;
}

RVector ul_noise(const Drop& drop, const PropagationParams& params, Rng& rng) {
  const auto mask = co_band_mask(drop.topology);
  const int nb = drop.num_bs();
  RVector noise(nb);
  for (int i = 0; i < nb; ++i) noise(i) = thermal_noise_w(drop.bs_noise_figure_db(i), params.bandwidth_hz);

  // One active mobile per interfering sector, uniformly among its mobiles.
  std::size_t begin = 0;
  while (begin < drop.ul_source_cell.size()) {
    const int cell = drop.ul_source_cell[begin];
    std::size_t end = begin;
    while (end < drop.ul_source_cell.size() && drop.ul_source_cell[end] == cell) ++end;
    for (int s = 0; s < kSectorsPerSite; ++s) {
      std::vector<std::size_t> members;
      for (std::size_t j = begin; j < end; ++j) {
        if (drop.ul_source_sector[j] == s) members.push_back(j);
      }
      if (members.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
      const std::size_t src = members[pick(rng)];
      for (int i = 0; i < nb; ++i) {
        const double fade = std::norm(complex_normal(rng));
        if (mask[static_cast<std::size_t>(cell)]) {
          noise(i) += drop.ms_tx_power_w * drop.ul_interference_gain(i, static_cast<Eigen::Index>(src)) * fade;
        }
      }
    }
    begin = end;
  }
  return noise;
}

RVector dl_noise(const Drop& drop, const PropagationParams& params, Rng& rng) {
  const auto mask = co_band_mask(drop.topology);
  const int nm = drop.num_ms();
  RVector noise = RVector::Constant(nm, thermal_noise_w(params.ms_noise_figure_db, params.bandwidth_hz));
  for (int k = 0; k < nm; ++k) {
    for (std::size_t s = 0; s < drop.dl_source_cell.size(); ++s) {
      const double fade = std::norm(complex_normal(rng));
      if (mask[static_cast<std::size_t>(drop.dl_source_cell[s])]) {
        const auto col = static_cast<Eigen::Index>(s);
        noise(k) += drop.dl_source_power_w(col) * drop.dl_interference_gain(k, col) * fade;
      }
    }
  }
  return noise;
}

}  // namespace

Drop prepare_drop(Topology topology, const PropagationParams& params, Rng& rng) {
  params.validate();
  Drop drop;
  drop.topology = std::move(topology);
  const Topology& topo = drop.topology;
  if (topo.num_cells() != kNumCells) throw std::invalid_argument("prepare_drop: topology must have 19 cells");

  const double macro_power = dbm_to_watts(params.macro_tx_power_dbm);
  const double pico_power = dbm_to_watts(params.pico_tx_power_dbm);
  drop.ms_tx_power_w = dbm_to_watts(params.ms_tx_power_dbm);

  std::vector<double> powers;
  std::vector<double> figures;
  for (int s = 0; s < kSectorsPerSite; ++s) {
    drop.cluster_bs.push_back({NodeKind::MacroSector, topo.macro_sites[0], topo.sector_boresights_deg[0][s]});
    powers.push_back(macro_power);
    figures.push_back(params.macro_noise_figure_db);
  }
  for (const Vec2& p : topo.pico_positions[0]) {
    drop.cluster_bs.push_back({NodeKind::Pico, p, 0.0});
    powers.push_back(pico_power);
    figures.push_back(params.pico_noise_figure_db);
  }
  for (const Vec2& p : topo.ms_positions[0]) drop.cluster_ms.push_back({NodeKind::Mobile, p, 0.0});
  drop.bs_tx_power_w = Eigen::Map<const RVector>(powers.data(), static_cast<Eigen::Index>(powers.size()));
  drop.bs_noise_figure_db = Eigen::Map<const RVector>(figures.data(), static_cast<Eigen::Index>(figures.size()));

  const int nb = drop.num_bs();
  const int nm = drop.num_ms();
  drop.gain.resize(nb, nm);
  for (int i = 0; i < nb; ++i) {
    for (int k = 0; k < nm; ++k) drop.gain(i, k) = link_gain_linear(drop.cluster_bs[i], drop.cluster_ms[k], params, rng);
  }

  // Downlink sources: sectors then picos of each other cell.
  std::vector<Node> dl_sources;
  std::vector<double> dl_powers;
  for (int c = 1; c < kNumCells; ++c) {
    for (int s = 0; s < kSectorsPerSite; ++s) {
      dl_sources.push_back({NodeKind::MacroSector, topo.macro_sites[c], topo.sector_boresights_deg[c][s]});
      dl_powers.push_back(macro_power);
      drop.dl_source_cell.push_back(c + 1);
    }
    for (const Vec2& p : topo.pico_positions[c]) {
      dl_sources.push_back({NodeKind::Pico, p, 0.0});
      dl_powers.push_back(pico_power);
      drop.dl_source_cell.push_back(c + 1);
    }
  }
  drop.dl_source_power_w = Eigen::Map<const RVector>(dl_powers.data(), static_cast<Eigen::Index>(dl_powers.size()));
  drop.dl_interference_gain.resize(nm, static_cast<Eigen::Index>(dl_sources.size()));
  for (int k = 0; k < nm; ++k) {
    for (std::size_t s = 0; s < dl_sources.size(); ++s) {
      drop.dl_interference_gain(k, static_cast<Eigen::Index>(s)) =
          link_gain_linear(dl_sources[s], drop.cluster_ms[k], params, rng);
    }
  }

  // Uplink sources: every mobile of each other cell, tagged with its sector.
  std::vector<Node> ul_sources;
  for (int c = 1; c < kNumCells; ++c) {
    for (const Vec2& p : topo.ms_positions[c]) {
      ul_sources.push_back({NodeKind::Mobile, p, 0.0});
      drop.ul_source_cell.push_back(c + 1);
      drop.ul_source_sector.push_back(serving_sector(topo, c, p));
    }
  }
  drop.ul_interference_gain.resize(nb, static_cast<Eigen::Index>(ul_sources.size()));
  for (int i = 0; i < nb; ++i) {
    for (std::size_t s = 0; s < ul_sources.size(); ++s) {
      drop.ul_interference_gain(i, static_cast<Eigen::Index>(s)) =
          link_gain_linear(drop.cluster_bs[i], ul_sources[s], params, rng);
    }
  }
  return drop;
}

double thermal_noise_w(double noise_figure_db, double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) throw std::domain_error("thermal_noise_w: bandwidth must be positive");
  return dbm_to_watts(-174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db);
}

cplx complex_normal(Rng& rng) {
  std::normal_distribution<double> n(0.0, std::numbers::sqrt2 / 2.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

double effective_noise_variance(const Drop& drop, const PropagationParams& params, Direction dir, int index,
                                Rng& rng) {
  if (dir == Direction::Uplink) {
    if (index < 0 || index >= drop.num_bs()) throw std::domain_error("effective_noise_variance: unknown BS");
    return ul_noise(drop, params, rng)(index);
  }
  if (index < 0 || index >= drop.num_ms()) throw std::domain_error("effective_noise_variance: unknown MS");
  return dl_noise(drop, params, rng)(index);
}

ChannelRealization realize_channel(const Drop& drop, const PropagationParams& params, int slot, Rng& rng) {
  const int nb = drop.num_bs();
  const int nm = drop.num_ms();
  ChannelRealization ch;
  ch.slot = slot;
  ch.h_ul.resize(nb, nm);
  ch.h_dl.resize(nm, nb);
  for (int i = 0; i < nb; ++i) {
    for (int k = 0; k < nm; ++k) ch.h_ul(i, k) = std::sqrt(drop.gain(i, k)) * complex_normal(rng);
  }
  for (int k = 0; k < nm; ++k) {
    for (int i = 0; i < nb; ++i) ch.h_dl(k, i) = std::sqrt(drop.gain(i, k)) * complex_normal(rng);
  }
  ch.noise_ul = ul_noise(drop, params, rng);
  ch.noise_dl = dl_noise(drop, params, rng);
  for (const Node& n : drop.cluster_bs) ch.bs_kind.push_back(n.kind);
  ch.bs_max_power_w = drop.bs_tx_power_w;
  ch.ms_max_power_w = RVector::Constant(nm, drop.ms_tx_power_w);
  return ch;
}

}  // namespace cran
