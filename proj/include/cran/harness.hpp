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

// Monte-Carlo experiment driver: drops run in parallel, slots within a drop
// run sequentially under the proportional-fair scheduler.

#pragma once

#include "cran/config.hpp"
#include "cran/uplink.hpp"

#include <cstdint>
#include <vector>

namespace cran {

struct SlotRecord {
  int drop = 0;
  int slot = 0;
  CompressionMode mode = CompressionMode::PointToPoint;
  int ms = 0;
  double rate = 0.0;  // after the rate mapping
};

struct SolverStats {
  std::int64_t runs = 0;
  std::int64_t warnings = 0;  // MM hit max_iter
  std::int64_t failures = 0;  // no feasible start or numerical failure; slot scored as zero
  std::int64_t mm_iterations = 0;
  std::int64_t rejected_steps = 0;
  std::int64_t monotonicity_violations = 0;  // trace decreased by more than 1e-9
};

struct ModeMetrics {
  CompressionMode mode = CompressionMode::PointToPoint;
  std::vector<double> sum_rate_samples;  // one per (drop, slot), sorted ascending
  std::vector<double> long_run_rates;    // one per (drop, MS): mean over the slots
  std::vector<double> slot_objectives;   // weighted objective per (drop, slot), in drop/slot order
  double sum_rate_p5 = 0.0;
  double sum_rate_p50 = 0.0;
  double average_se = 0.0;  // mean of long_run_rates
  double cell_edge = 0.0;   // 5th percentile of long_run_rates
  SolverStats stats;
};

struct MetricsReport {
  double alpha = 0.0;
  std::vector<SlotRecord> records;  // ordered by drop, slot, mode, ms
  std::vector<ModeMetrics> modes;   // point-to-point first when both run

  const ModeMetrics* find(CompressionMode mode) const;
};

/// Runs every drop of `config` at fairness exponent `alpha`. Results do not
/// depend on config.jobs.
MetricsReport run_experiment(const ExperimentConfig& config, double alpha);

/// run_experiment at config.alpha.front().
MetricsReport run_experiment(const ExperimentConfig& config);

struct SweepPoint {
  double alpha = 0.0;
  CompressionMode mode = CompressionMode::PointToPoint;
  double average_se = 0.0;
  double cell_edge = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;  // alpha-major, modes in report order
  std::vector<MetricsReport> reports;
};

SweepResult alpha_sweep(const ExperimentConfig& config);

/// Linear-interpolation empirical quantile, q in [0, 100].
double percentile(std::vector<double> samples, double q);

/// Backhaul link rate (bit/s) over the wireless bandwidth (Hz).
double normalize_backhaul(double link_rate_bps, double bandwidth_hz);

}  // namespace cran
