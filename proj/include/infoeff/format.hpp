// Copyright 2026 The infoeff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Text serialization: CSV tables and the flat JSON report.

#include <charconv>
#include <cmath>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infoeff/coin_game.hpp"
#include "infoeff/efficiency.hpp"
#include "infoeff/estimation.hpp"
#include "infoeff/kelly.hpp"

namespace infoeff {

/// Shortest decimal that reads back to the same double. Infinities print as
/// "inf"/"-inf".
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

/// `param,value` table.
inline void write_sweep_csv(std::ostream& out, std::span<const coin::SweepRow> rows) {
  out << "param,value\n";
  for (const auto& r : rows) out << format_number(r.param) << "," << format_number(r.value) << "\n";
}

/// `round,log2_wealth` table.
inline void write_trajectory_csv(std::ostream& out, const kelly::SimulationResult& result) {
  out << "round,log2_wealth\n";
  for (const auto& p : result.trajectory) out << p.round << "," << format_number(p.log2_wealth) << "\n";
}

/// Flat JSON object; absent optional fields are omitted.
inline nlohmann::ordered_json to_json(const EfficiencyReport& r) {
  nlohmann::ordered_json j;
  j["info_set"] = r.info_set.to_string();
  j["h_x"] = r.h_x.value();
  j["h_x_given_y"] = r.h_x_given_y.value();
  if (r.h_q) j["h_q"] = r.h_q->value();
  if (r.eff) j["eff"] = *r.eff;
  if (r.eff_q) j["eff_q"] = *r.eff_q;
  j["g_max"] = r.g_max.value();
  if (r.g_max_q) j["g_max_q"] = r.g_max_q->value();
  j["predictability_gap"] = r.predictability_gap.value();
  if (r.mispricing_gap) j["mispricing_gap"] = r.mispricing_gap->value();
  return j;
}

inline nlohmann::ordered_json to_json(const estimation::EstimateReport& r) {
  auto j = to_json(r.point);
  j["ci_low"] = r.eff_ci.low;
  j["ci_high"] = r.eff_ci.high;
  if (r.eff_q_ci) {
    j["eff_q_ci_low"] = r.eff_q_ci->low;
    j["eff_q_ci_high"] = r.eff_q_ci->high;
  }
  j["n_samples"] = r.n_samples;
  j["smoothing"] = r.smoothing;
  j["resamples"] = r.resamples;
  j["seed"] = r.seed;
  j["degenerate_resamples"] = r.degenerate_resamples;
  if (r.warning) j["warning"] = *r.warning;
  return j;
}

/// Two-line CSV (header, values) from a flat JSON object.
inline void write_flat_csv(std::ostream& out, const nlohmann::ordered_json& flat) {
  std::string header;
  std::string values;
  for (auto it = flat.begin(); it != flat.end(); ++it) {
    if (!header.empty()) {
      header += ",";
      values += ",";
    }
    header += it.key();
    if (it->is_number_float()) {
      values += format_number(it->get<double>());
    } else if (it->is_string()) {
      values += it->get<std::string>();
    } else {
      values += it->dump();
    }
  }
  out << header << "\n" << values << "\n";
}

}  // namespace infoeff
