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

#include "cran/report.hpp"

#include "cran/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace cran {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void write_mode_summary(std::ostream& out, const std::string& prefix, const ModeMetrics& m) {
  out << prefix << "sum_rate_p5 = " << format_number(m.sum_rate_p5) << '\n';
  out << prefix << "sum_rate_p50 = " << format_number(m.sum_rate_p50) << '\n';
  out << prefix << "average_se = " << format_number(m.average_se) << '\n';
  out << prefix << "cell_edge = " << format_number(m.cell_edge) << '\n';
  out << prefix << "solver_runs = " << m.stats.runs << '\n';
  out << prefix << "solver_warnings = " << m.stats.warnings << '\n';
  out << prefix << "solver_failures = " << m.stats.failures << '\n';
  out << prefix << "mm_iterations = " << m.stats.mm_iterations << '\n';
  out << prefix << "rejected_steps = " << m.stats.rejected_steps << '\n';
  out << prefix << "monotonicity_violations = " << m.stats.monotonicity_violations << '\n';
}

void write_config_echo(std::ostream& out, const ExperimentConfig& c) {
  out << "direction = " << to_string(c.direction) << '\n';
  out << "mode = " << to_string(c.mode) << '\n';
  out << "K = " << c.K << '\n';
  out << "N = " << c.N << '\n';
  out << "C_macro = " << format_number(c.c_macro) << '\n';
  out << "C_pico = " << format_number(c.c_pico) << '\n';
  out << "beta = " << format_number(c.beta) << '\n';
  out << "T = " << c.slots << '\n';
  out << "drops = " << c.drops << '\n';
  out << "seed = " << c.seed << '\n';
  out << "reuse = " << (c.reuse == Reuse::Full ? "F1" : "F1_3") << '\n';
  out << "rate_mapping = "
      << (c.rate_mapping.kind == RateMapping::Kind::Shannon
              ? std::string("shannon")
              : "attenuated(" + format_number(c.rate_mapping.scale) + "," + format_number(c.rate_mapping.cap) + ")")
      << '\n';
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

void write_records_csv(std::ostream& out, const MetricsReport& report) {
  out << "drop,slot,mode,ms,rate\n";
  for (const SlotRecord& r : report.records) {
    out << r.drop << ',' << r.slot << ',' << to_string(r.mode) << ',' << r.ms << ',' << format_number(r.rate) << '\n';
  }
}

void write_summary(std::ostream& out, const ExperimentConfig& config, const MetricsReport& report) {
  write_config_echo(out, config);
  out << "alpha = " << format_number(report.alpha) << '\n';
  for (const ModeMetrics& m : report.modes) write_mode_summary(out, std::string(to_string(m.mode)) + ".", m);
  const ModeMetrics* p2p = report.find(CompressionMode::PointToPoint);
  const ModeMetrics* mt = report.find(CompressionMode::Multiterminal);
  if (p2p != nullptr && mt != nullptr && p2p->sum_rate_p50 > 0.0) {
    out << "gain_sum_rate_p50 = " << format_number(mt->sum_rate_p50 / p2p->sum_rate_p50 - 1.0) << '\n';
  }
}

void write_sweep_summary(std::ostream& out, const ExperimentConfig& config, const SweepResult& sweep) {
  write_config_echo(out, config);
  for (std::size_t i = 0; i < sweep.reports.size(); ++i) {
    const MetricsReport& r = sweep.reports[i];
    out << "alpha[" << i << "] = " << format_number(r.alpha) << '\n';
    for (const ModeMetrics& m : r.modes) {
      write_mode_summary(out, "alpha[" + std::to_string(i) + "]." + to_string(m.mode) + ".", m);
    }
  }
}

void write_cdf(std::ostream& out, const MetricsReport& report) {
  out << '#';
  for (const ModeMetrics& m : report.modes) out << ' ' << to_string(m.mode) << "_sum_rate " << to_string(m.mode) << "_cdf";
  out << '\n';
  if (report.modes.empty()) return;
  const std::size_t n = report.modes.front().sum_rate_samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i + 1) / static_cast<double>(n);
    bool first = true;
    for (const ModeMetrics& m : report.modes) {
      out << (first ? "" : " ") << format_number(m.sum_rate_samples[i]) << ' ' << format_number(f);
      first = false;
    }
    out << '\n';
  }
}

void write_sweep(std::ostream& out, const SweepResult& sweep) {
  out << "# alpha";
  if (!sweep.reports.empty()) {
    for (const ModeMetrics& m : sweep.reports.front().modes) {
      out << ' ' << to_string(m.mode) << "_average_se " << to_string(m.mode) << "_cell_edge";
    }
  }
  out << '\n';
  for (const MetricsReport& r : sweep.reports) {
    out << format_number(r.alpha);
    for (const ModeMetrics& m : r.modes) out << ' ' << format_number(m.average_se) << ' ' << format_number(m.cell_edge);
    out << '\n';
  }
}

void write_experiment(const std::string& dir, const ExperimentConfig& config, const MetricsReport& report) {
  const std::filesystem::path root(dir);
  std::filesystem::create_directories(root);
  auto records = open_output(root / "records.csv");
  write_records_csv(records, report);
  auto summary = open_output(root / "summary.txt");
  write_summary(summary, config, report);
  auto cdf = open_output(root / "cdf_sumrate.dat");
  write_cdf(cdf, report);
}

void write_alpha_sweep(const std::string& dir, const ExperimentConfig& config, const SweepResult& sweep) {
  const std::filesystem::path root(dir);
  std::filesystem::create_directories(root);
  auto curve = open_output(root / "sweep.dat");
  write_sweep(curve, sweep);
  auto summary = open_output(root / "summary.txt");
  write_sweep_summary(summary, config, sweep);
  for (std::size_t i = 0; i < sweep.reports.size(); ++i) {
    auto records = open_output(root / ("records_alpha" + std::to_string(i) + ".csv"));
    write_records_csv(records, sweep.reports[i]);
  }
}

}  // namespace cran
