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

// Result files. Numbers use 9 significant digits and the C locale so that the
// output is byte-reproducible.

#pragma once

#include "cran/harness.hpp"

#include <ostream>
#include <string>

namespace cran {

std::string format_number(double value);

/// drop,slot,mode,ms,rate
void write_records_csv(std::ostream& out, const MetricsReport& report);

/// key = value lines: configuration echo, percentiles, means, solver stats.
void write_summary(std::ostream& out, const ExperimentConfig& config, const MetricsReport& report);
void write_sweep_summary(std::ostream& out, const ExperimentConfig& config, const SweepResult& sweep);

/// Empirical CDF of the per-slot sum-rate: two columns (rate, F) per mode.
void write_cdf(std::ostream& out, const MetricsReport& report);

/// Cell-edge versus spectral efficiency: two columns (average SE, cell-edge) per mode, one row per alpha.
void write_sweep(std::ostream& out, const SweepResult& sweep);

/// Writes records.csv, summary.txt and cdf_sumrate.dat under `dir`.
void write_experiment(const std::string& dir, const ExperimentConfig& config, const MetricsReport& report);

/// Writes sweep.dat, summary.txt and records_alpha<i>.csv under `dir`.
void write_alpha_sweep(const std::string& dir, const ExperimentConfig& config, const SweepResult& sweep);

}  // namespace cran
