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

// Experiment configuration: a JSON tree mirroring ExperimentConfig. Unknown
// keys are rejected so that typos do not silently fall back to defaults.

#pragma once

#include "cran/cellgeom.hpp"
#include "cran/channel.hpp"
#include "cran/mmopt.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cran {

enum class ModeSelection { PointToPoint, Multiterminal, Both };

struct RateMapping {
  enum class Kind { Shannon, Attenuated };
  Kind kind = Kind::Shannon;
  double scale = 0.6;
  double cap = 4.4;  // bps/Hz

  double apply(double rate) const;
};

struct ExperimentConfig {
  Direction direction = Direction::Uplink;
  ModeSelection mode = ModeSelection::Both;
  int K = 5;
  int N = 5;
  double c_macro = 3.0;  // bps/Hz
  double c_pico = 1.0;   // bps/Hz
  std::vector<double> alpha{0.0};
  double beta = 0.5;
  int slots = 1;  // T
  int drops = 200;
  std::uint64_t seed = 1;
  RateMapping rate_mapping;
  Reuse reuse = Reuse::OneThird;
  PropagationParams propagation;
  MMOptions solver;
  int jobs = 1;

  /// Throws ConfigError on the first violated invariant.
  void validate() const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string dump_config(const ExperimentConfig& config);

const char* to_string(Direction direction);
const char* to_string(ModeSelection mode);
ModeSelection parse_mode(const std::string& text);
Direction parse_direction(const std::string& text);

}  // namespace cran
