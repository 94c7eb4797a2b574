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

#include "cran/harness.hpp"

#include "cran/downlink.hpp"
#include "cran/errors.hpp"
#include "cran/scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

namespace cran {

namespace {

struct ModeOutcome {
  std::vector<double> slot_sum_rates;
  std::vector<double> slot_objectives;
  std::vector<double> long_run_rates;
  SolverStats stats;
};

struct DropOutcome {
  std::vector<SlotRecord> records;
  std::vector<ModeOutcome> modes;
};

std::vector<CompressionMode> modes_of(ModeSelection selection) {
  switch (selection) {
    case ModeSelection::PointToPoint: return {CompressionMode::PointToPoint};
    case ModeSelection::Multiterminal: return {CompressionMode::Multiterminal};
    case ModeSelection::Both: return {CompressionMode::PointToPoint, CompressionMode::Multiterminal};
  }
  return {};
}

void account(SolverStats& stats, const MMTrace& trace, bool warning) {
  ++stats.runs;
  if (warning) ++stats.warnings;
  stats.mm_iterations += trace.iterations;
  stats.rejected_steps += trace.rejected_steps;
  const auto& obj = trace.objective_per_iteration;
  for (std::size_t i = 1; i < obj.size(); ++i) {
    if (obj[i] < obj[i - 1] - 1e-9) {
      ++stats.monotonicity_violations;
      break;
    }
  }
}

DropOutcome run_drop(const ExperimentConfig& config, double alpha, int drop) {
  const auto modes = modes_of(config.mode);
  const std::uint64_t d = static_cast<std::uint64_t>(drop);
  Topology topo = build_layout(derive_seed(config.seed, d, 1), config.K, config.N, config.propagation, config.reuse);
  Rng drop_rng(derive_seed(config.seed, d, 2));
  const Drop state = prepare_drop(std::move(topo), config.propagation, drop_rng);

  RVector capacity(state.num_bs());
  for (int i = 0; i < state.num_bs(); ++i) {
    capacity(i) = state.cluster_bs[static_cast<std::size_t>(i)].kind == NodeKind::MacroSector ? config.c_macro
                                                                                               : config.c_pico;
  }

  DropOutcome out;
  out.modes.resize(modes.size());
  std::vector<FairnessState> fairness(modes.size(), FairnessState::initial(config.K, alpha, config.beta));
  std::vector<RVector> totals(modes.size(), RVector::Zero(config.K));

  UplinkOptions ul_options;
  ul_options.mm = config.solver;
  DownlinkOptions dl_options;
  dl_options.mm.tol = config.solver.tol;
  dl_options.mm.max_iter = config.solver.max_iter;

  for (int slot = 0; slot < config.slots; ++slot) {
    Rng slot_rng(derive_seed(config.seed, d, 3, static_cast<std::uint64_t>(slot)));
    const ChannelRealization ch = realize_channel(state, config.propagation, slot, slot_rng);
    DownlinkDesign p2p_design;
    RVector p2p_weights;
    bool have_p2p = false;

    for (std::size_t m = 0; m < modes.size(); ++m) {
      ModeOutcome& mo = out.modes[m];
      const RVector w = weights(fairness[m]);
      RVector rates = RVector::Zero(config.K);
      double objective = 0.0;
      try {
        if (config.direction == Direction::Uplink) {
          const UplinkResult r = optimize_ul(ch, capacity, w, modes[m], ul_options);
          rates = r.rates;
          objective = r.objective;
          account(mo.stats, r.trace, r.warning);
        } else {
          // Multiterminal starts from the point-to-point design for the same
          // weights, so it never scores below point-to-point on this slot.
          std::optional<DownlinkDesign> start;
          if (modes[m] == CompressionMode::Multiterminal) {
            if (have_p2p && p2p_weights == w) {
              start = p2p_design;
            } else {
              start = optimize_dl(ch, capacity, ch.bs_max_power_w, w, CompressionMode::PointToPoint, dl_options).design;
            }
          }
          const DownlinkResult r =
              optimize_dl(ch, capacity, ch.bs_max_power_w, w, modes[m], dl_options, start ? &*start : nullptr);
          rates = r.rates;
          objective = r.objective;
          account(mo.stats, r.trace, r.warning);
          if (modes[m] == CompressionMode::PointToPoint) {
            p2p_design = r.design;
            p2p_weights = w;
            have_p2p = true;
          }
        }
      } catch (const NumericalError&) {
        ++mo.stats.runs;
        ++mo.stats.failures;
      } catch (const InfeasibleError&) {
        ++mo.stats.runs;
        ++mo.stats.failures;
      }

      double sum = 0.0;
      for (int k = 0; k < config.K; ++k) {
        const double mapped = config.rate_mapping.apply(rates(k));
        rates(k) = mapped;
        sum += mapped;
        out.records.push_back({drop, slot, modes[m], k, mapped});
      }
      mo.slot_sum_rates.push_back(sum);
      mo.slot_objectives.push_back(objective);
      totals[m] += rates;
      fairness[m] = update(fairness[m], rates);
    }
  }

  for (std::size_t m = 0; m < modes.size(); ++m) {
    for (int k = 0; k < config.K; ++k) out.modes[m].long_run_rates.push_back(totals[m](k) / config.slots);
  }
  return out;
}

}  // namespace

const ModeMetrics* MetricsReport::find(CompressionMode mode) const {
  for (const auto& m : modes) {
    if (m.mode == mode) return &m;
  }
  return nullptr;
}

double percentile(std::vector<double> samples, double q) {
  if (samples.empty()) throw std::domain_error("percentile: no samples");
  if (!(q >= 0.0 && q <= 100.0)) throw std::domain_error("percentile: q must lie in [0, 100]");
  std::sort(samples.begin(), samples.end());
  const double pos = q / 100.0 * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return samples[lo] + frac * (samples[hi] - samples[lo]);
}

double normalize_backhaul(double link_rate_bps, double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) throw std::domain_error("normalize_backhaul: bandwidth must be positive");
  return link_rate_bps / bandwidth_hz;
}

MetricsReport run_experiment(const ExperimentConfig& config) { return run_experiment(config, config.alpha.front()); }

MetricsReport run_experiment(const ExperimentConfig& config, double alpha) {
  config.validate();
  if (!(alpha >= 0.0)) throw ConfigError("alpha must be >= 0");

  std::vector<DropOutcome> outcomes(static_cast<std::size_t>(config.drops));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (int drop = next++; drop < config.drops; drop = next++) {
      try {
        outcomes[static_cast<std::size_t>(drop)] = run_drop(config, alpha, drop);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = config.drops;
      }
    }
  };
  const int workers = std::min(config.jobs, config.drops);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < workers; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  const auto modes = modes_of(config.mode);
  MetricsReport report;
  report.alpha = alpha;
  report.modes.resize(modes.size());
  for (std::size_t m = 0; m < modes.size(); ++m) report.modes[m].mode = modes[m];

  for (int drop = 0; drop < config.drops; ++drop) {
    const DropOutcome& o = outcomes[static_cast<std::size_t>(drop)];
    for (std::size_t m = 0; m < modes.size(); ++m) {
      ModeMetrics& mm = report.modes[m];
      const ModeOutcome& mo = o.modes[m];
      mm.sum_rate_samples.insert(mm.sum_rate_samples.end(), mo.slot_sum_rates.begin(), mo.slot_sum_rates.end());
      mm.slot_objectives.insert(mm.slot_objectives.end(), mo.slot_objectives.begin(), mo.slot_objectives.end());
      mm.long_run_rates.insert(mm.long_run_rates.end(), mo.long_run_rates.begin(), mo.long_run_rates.end());
      mm.stats.runs += mo.stats.runs;
      mm.stats.warnings += mo.stats.warnings;
      mm.stats.failures += mo.stats.failures;
      mm.stats.mm_iterations += mo.stats.mm_iterations;
      mm.stats.rejected_steps += mo.stats.rejected_steps;
      mm.stats.monotonicity_violations += mo.stats.monotonicity_violations;
    }
    report.records.insert(report.records.end(), o.records.begin(), o.records.end());
  }
  for (ModeMetrics& mm : report.modes) {
    std::sort(mm.sum_rate_samples.begin(), mm.sum_rate_samples.end());
    mm.sum_rate_p5 = percentile(mm.sum_rate_samples, 5.0);
    mm.sum_rate_p50 = percentile(mm.sum_rate_samples, 50.0);
    double acc = 0.0;
    for (double r : mm.long_run_rates) acc += r;
    mm.average_se = acc / static_cast<double>(mm.long_run_rates.size());
    mm.cell_edge = percentile(mm.long_run_rates, 5.0);
  }
  return report;
}

SweepResult alpha_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult sweep;
  for (double a : config.alpha) {
    MetricsReport report = run_experiment(config, a);
    for (const ModeMetrics& m : report.modes) sweep.points.push_back({a, m.mode, m.average_se, m.cell_edge});
    sweep.reports.push_back(std::move(report));
  }
  return sweep;
}

}  // namespace cran
