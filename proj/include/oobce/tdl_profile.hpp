// SPDX-License-Identifier: Apache-2.0
//
// oobce: dual-band MIMO-OFDM link-level simulator for out-of-band aided
// mmWave channel estimation
// Copyright (C) 2026 The oobce authors
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
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oobce/config.hpp"

namespace oobce {

/// Tapped-delay-line power delay profile with delays normalized to the RMS
/// delay spread. Taps are kept sorted by delay.
struct TdlProfile {
  std::vector<double> normalized_delays;
  std::vector<double> powers_db;

  [[nodiscard]] std::size_t tap_count() const { return normalized_delays.size(); }

  /// Linear tap powers scaled to sum to one.
  [[nodiscard]] std::vector<double> linear_powers() const {
    std::vector<double> p(powers_db.size());
    std::transform(powers_db.begin(), powers_db.end(), p.begin(), db_to_linear);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& v : p) v /= total;
    return p;
  }
};

/// Checks the profile and sorts taps by delay (stable, powers follow).
inline TdlProfile make_tdl_profile(std::vector<double> delays, std::vector<double> powers_db) {
  if (delays.empty()) throw ConfigError("TDL profile has no taps");
  if (delays.size() != powers_db.size()) throw ConfigError("TDL profile: delay/power count mismatch");
  std::vector<std::size_t> order(delays.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return delays[a] < delays[b]; });
  TdlProfile p;
  for (auto i : order) {
    if (!std::isfinite(delays[i]) || delays[i] < 0.0) throw ConfigError("TDL profile: negative delay");
    if (!std::isfinite(powers_db[i])) throw ConfigError("TDL profile: non-finite power");
    p.normalized_delays.push_back(delays[i]);
    p.powers_db.push_back(powers_db[i]);
  }
  return p;
}

/// Built-in copy of data/tdl_a.csv.
inline TdlProfile tdl_a() {
  return make_tdl_profile(
      {0.0000, 0.3819, 0.4025, 0.5868, 0.4610, 0.5375, 0.6708, 0.5750, 0.7618, 1.5375, 1.8978, 2.2242,
       2.1718, 2.4942, 2.5119, 3.0582, 4.0810, 4.4579, 4.5695, 4.7966, 5.0066, 5.3043, 9.6586},
      {-13.4, 0.0, -2.2, -4.0, -6.0, -8.2, -9.9, -10.5, -7.5, -15.9, -6.6, -16.7,
       -12.4, -15.2, -10.8, -11.3, -12.7, -16.2, -18.3, -18.9, -16.6, -19.9, -29.7});
}

/// Reads `delay, power_dB` lines; `#` starts a comment.
inline TdlProfile parse_tdl_profile(std::istream& in) {
  std::vector<double> delays;
  std::vector<double> powers;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ConfigError("TDL profile line " + std::to_string(line_no) + ": expected 'delay, power_dB'");
    }
    delays.push_back(detail::parse_real("delay", detail::trim(line.substr(0, comma))));
    powers.push_back(detail::parse_real("power_dB", detail::trim(line.substr(comma + 1))));
  }
  return make_tdl_profile(std::move(delays), std::move(powers));
}

inline TdlProfile load_tdl_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open TDL profile '" + path + "'");
  return parse_tdl_profile(in);
}

}  // namespace oobce
