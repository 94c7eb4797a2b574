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

// Command-line front end: cran_sim {uplink|downlink|sweep} [options].

#include "cran/config.hpp"
#include "cran/errors.hpp"
#include "cran/harness.hpp"
#include "cran/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> drops;
  std::optional<std::string> mode;
  std::optional<int> jobs;
  std::string out_dir;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--drops", o.drops, "number of drops");
  cmd->add_option("--mode", o.mode, "point_to_point | multiterminal | both");
  cmd->add_option("--jobs", o.jobs, "worker threads");
  cmd->add_option("--out", o.out_dir, "output directory (default: $CRAN_OUT_DIR or ./out)");
}

cran::ExperimentConfig resolve(const Overrides& o) {
  cran::ExperimentConfig c = o.config_path.empty() ? cran::ExperimentConfig{} : cran::load_config(o.config_path);
  if (o.seed) c.seed = *o.seed;
  if (o.drops) c.drops = *o.drops;
  if (o.mode) c.mode = cran::parse_mode(*o.mode);
  if (o.jobs) c.jobs = *o.jobs;
  return c;
}

std::string output_dir(const Overrides& o) {
  if (!o.out_dir.empty()) return o.out_dir;
  if (const char* env = std::getenv("CRAN_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "out";
}

void print_modes(const cran::MetricsReport& r) {
  for (const auto& m : r.modes) {
    std::cout << "alpha=" << cran::format_number(r.alpha) << ' ' << cran::to_string(m.mode)
              << " p50_sum_rate=" << cran::format_number(m.sum_rate_p50)
              << " average_se=" << cran::format_number(m.average_se)
              << " cell_edge=" << cran::format_number(m.cell_edge) << " warnings=" << m.stats.warnings
              << " failures=" << m.stats.failures << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cloud RAN backhaul compression simulator"};
  app.require_subcommand(1);
  Overrides ul;
  Overrides dl;
  Overrides sw;
  CLI::App* uplink = app.add_subcommand("uplink", "uplink sum-rate experiment");
  CLI::App* downlink = app.add_subcommand("downlink", "downlink sum-rate experiment");
  CLI::App* sweep = app.add_subcommand("sweep", "fairness sweep: cell-edge versus spectral efficiency");
  add_common(uplink, ul);
  add_common(downlink, dl);
  add_common(sweep, sw);

  CLI11_PARSE(app, argc, argv);

  try {
    if (uplink->parsed() || downlink->parsed()) {
      const Overrides& o = uplink->parsed() ? ul : dl;
      cran::ExperimentConfig c = resolve(o);
      c.direction = uplink->parsed() ? cran::Direction::Uplink : cran::Direction::Downlink;
      c.validate();
      const cran::MetricsReport report = cran::run_experiment(c);
      const std::string dir = output_dir(o);
      cran::write_experiment(dir, c, report);
      print_modes(report);
      std::cout << "wrote " << dir << '\n';
    } else {
      cran::ExperimentConfig c = resolve(sw);
      c.validate();
      const cran::SweepResult result = cran::alpha_sweep(c);
      const std::string dir = output_dir(sw);
      cran::write_alpha_sweep(dir, c, result);
      for (const auto& r : result.reports) print_modes(r);
      std::cout << "wrote " << dir << '\n';
    }
  } catch (const cran::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
