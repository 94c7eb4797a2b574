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

#include "cran/config.hpp"

#include "cran/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cran {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& node, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : node.items()) {
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& node, const char* key, T& out) {
  if (!node.contains(key)) return;
  try {
    out = node.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

// Propagation fields addressable from the config file.
std::map<std::string, double PropagationParams::*> propagation_fields() {
  return {
      {"macro_pl_intercept_db", &PropagationParams::macro_pl_intercept_db},
      {"macro_pl_slope_db", &PropagationParams::macro_pl_slope_db},
      {"pico_pl_intercept_db", &PropagationParams::pico_pl_intercept_db},
      {"pico_pl_slope_db", &PropagationParams::pico_pl_slope_db},
      {"theta_3db_deg", &PropagationParams::theta_3db_deg},
      {"max_attenuation_db", &PropagationParams::max_attenuation_db},
      {"macro_shadowing_db", &PropagationParams::macro_shadowing_db},
      {"pico_shadowing_db", &PropagationParams::pico_shadowing_db},
      {"macro_antenna_gain_dbi", &PropagationParams::macro_antenna_gain_dbi},
      {"pico_antenna_gain_dbi", &PropagationParams::pico_antenna_gain_dbi},
      {"ms_antenna_gain_dbi", &PropagationParams::ms_antenna_gain_dbi},
      {"macro_noise_figure_db", &PropagationParams::macro_noise_figure_db},
      {"pico_noise_figure_db", &PropagationParams::pico_noise_figure_db},
      {"ms_noise_figure_db", &PropagationParams::ms_noise_figure_db},
      {"macro_tx_power_dbm", &PropagationParams::macro_tx_power_dbm},
      {"pico_tx_power_dbm", &PropagationParams::pico_tx_power_dbm},
      {"ms_tx_power_dbm", &PropagationParams::ms_tx_power_dbm},
      {"bandwidth_hz", &PropagationParams::bandwidth_hz},
      {"inter_site_distance_m", &PropagationParams::inter_site_distance_m},
      {"min_macro_distance_m", &PropagationParams::min_macro_distance_m},
      {"min_pico_distance_m", &PropagationParams::min_pico_distance_m},
  };
}

}  // namespace

double RateMapping::apply(double rate) const {
  if (kind == Kind::Shannon) return rate;
  return std::min(scale * rate, cap);
}

void ExperimentConfig::validate() const {
  if (K < 1) throw ConfigError("K must be at least 1");
  if (N < 0) throw ConfigError("N must be non-negative");
  if (3 + N > 32) throw ConfigError("at most 29 picos per cell are supported");
  if (direction == Direction::Downlink && 3 + N > 16) {
    throw ConfigError("downlink subset enumeration supports at most 13 picos per cell");
  }
  if (!(c_macro >= 0.0) || !(c_pico >= 0.0)) throw ConfigError("backhaul capacities must be >= 0");
  if (alpha.empty()) throw ConfigError("alpha list must be nonempty");
  for (double a : alpha) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw ConfigError("alpha values must be finite and >= 0");
  }
  if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("beta must lie in [0, 1]");
  if (slots < 1) throw ConfigError("T must be at least 1");
  if (drops < 1) throw ConfigError("drops must be at least 1");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  if (rate_mapping.kind == RateMapping::Kind::Attenuated && (!(rate_mapping.scale > 0.0) || !(rate_mapping.cap > 0.0))) {
    throw ConfigError("attenuated rate mapping needs positive scale and cap");
  }
  if (!(solver.tol > 0.0) || solver.max_iter < 1) throw ConfigError("solver tol must be > 0 and max_iter >= 1");
  propagation.validate();
}

const char* to_string(Direction direction) { return direction == Direction::Uplink ? "uplink" : "downlink"; }

const char* to_string(ModeSelection mode) {
  switch (mode) {
    case ModeSelection::PointToPoint: return "point_to_point";
    case ModeSelection::Multiterminal: return "multiterminal";
    case ModeSelection::Both: return "both";
  }
  return "both";
}

ModeSelection parse_mode(const std::string& text) {
  if (text == "point_to_point" || text == "p2p") return ModeSelection::PointToPoint;
  if (text == "multiterminal" || text == "mt") return ModeSelection::Multiterminal;
  if (text == "both") return ModeSelection::Both;
  throw ConfigError("unknown mode '" + text + "'");
}

Direction parse_direction(const std::string& text) {
  if (text == "uplink") return Direction::Uplink;
  if (text == "downlink") return Direction::Downlink;
  throw ConfigError("unknown direction '" + text + "'");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  reject_unknown(root,
                 {"direction", "mode", "K", "N", "C_macro", "C_pico", "alpha", "beta", "T", "drops", "seed",
                  "rate_mapping", "reuse", "propagation", "solver", "jobs"},
                 "config");

  ExperimentConfig c;
  std::string text;
  if (root.contains("direction")) {
    read(root, "direction", text);
    c.direction = parse_direction(text);
  }
  if (root.contains("mode")) {
    read(root, "mode", text);
    c.mode = parse_mode(text);
  }
  read(root, "K", c.K);
  read(root, "N", c.N);
  read(root, "C_macro", c.c_macro);
  read(root, "C_pico", c.c_pico);
  if (root.contains("alpha")) {
    if (root["alpha"].is_array()) {
      read(root, "alpha", c.alpha);
    } else {
      double a = 0.0;
      read(root, "alpha", a);
      c.alpha = {a};
    }
  }
  read(root, "beta", c.beta);
  read(root, "T", c.slots);
  read(root, "drops", c.drops);
  read(root, "seed", c.seed);
  read(root, "jobs", c.jobs);
  if (root.contains("reuse")) {
    read(root, "reuse", text);
    if (text == "F1") {
      c.reuse = Reuse::Full;
    } else if (text == "F1_3") {
      c.reuse = Reuse::OneThird;
    } else {
      throw ConfigError("reuse must be F1 or F1_3");
    }
  }
  if (root.contains("rate_mapping")) {
    const json& rm = root["rate_mapping"];
    if (rm.is_string()) {
      text = rm.get<std::string>();
      if (text == "shannon") {
        c.rate_mapping.kind = RateMapping::Kind::Shannon;
      } else if (text == "attenuated") {
        c.rate_mapping.kind = RateMapping::Kind::Attenuated;
      } else {
        throw ConfigError("rate_mapping must be shannon or attenuated");
      }
    } else if (rm.is_object()) {
      reject_unknown(rm, {"kind", "scale", "cap"}, "rate_mapping");
      text = "attenuated";
      read(rm, "kind", text);
      if (text != "attenuated" && text != "shannon") throw ConfigError("rate_mapping.kind must be shannon or attenuated");
      c.rate_mapping.kind = text == "shannon" ? RateMapping::Kind::Shannon : RateMapping::Kind::Attenuated;
      read(rm, "scale", c.rate_mapping.scale);
      read(rm, "cap", c.rate_mapping.cap);
    } else {
      throw ConfigError("rate_mapping must be a string or an object");
    }
  }
  if (root.contains("propagation")) {
    const json& p = root["propagation"];
    if (!p.is_object()) throw ConfigError("propagation must be an object");
    const auto fields = propagation_fields();
    for (const auto& [key, value] : p.items()) {
      const auto it = fields.find(key);
      if (it == fields.end()) throw ConfigError("unknown key '" + key + "' in propagation");
      if (!value.is_number()) throw ConfigError("propagation." + key + " must be a number");
      c.propagation.*(it->second) = value.get<double>();
    }
  }
  if (root.contains("solver")) {
    const json& s = root["solver"];
    reject_unknown(s, {"tol", "max_iter"}, "solver");
    read(s, "tol", c.solver.tol);
    read(s, "max_iter", c.solver.max_iter);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const ExperimentConfig& c) {
  json root;
  root["direction"] = to_string(c.direction);
  root["mode"] = to_string(c.mode);
  root["K"] = c.K;
  root["N"] = c.N;
  root["C_macro"] = c.c_macro;
  root["C_pico"] = c.c_pico;
  root["alpha"] = c.alpha;
  root["beta"] = c.beta;
  root["T"] = c.slots;
  root["drops"] = c.drops;
  root["seed"] = c.seed;
  root["reuse"] = c.reuse == Reuse::Full ? "F1" : "F1_3";
  if (c.rate_mapping.kind == RateMapping::Kind::Shannon) {
    root["rate_mapping"] = "shannon";
  } else {
    root["rate_mapping"] = {{"kind", "attenuated"}, {"scale", c.rate_mapping.scale}, {"cap", c.rate_mapping.cap}};
  }
  json prop = json::object();
  for (const auto& [key, field] : propagation_fields()) prop[key] = c.propagation.*field;
  root["propagation"] = prop;
  root["solver"] = {{"tol", c.solver.tol}, {"max_iter", c.solver.max_iter}};
  return root.dump(2);
}

}  // namespace cran
