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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oobce {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

/// Raised for any invalid or inconsistent simulation parameter.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an input or output file cannot be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Per-band OFDM and propagation parameters.
struct BandParams {
  double carrier_frequency_hz = 0.0;
  double bandwidth_hz = 0.0;
  double subcarrier_spacing_hz = 0.0;
  double noise_figure_db = 0.0;
  double rms_delay_spread_s = 0.0;
  double cyclic_prefix_s = 0.0;  // informational; the model works per subcarrier

  [[nodiscard]] double wavelength_m() const { return kSpeedOfLight / carrier_frequency_hz; }
};

inline BandParams default_sub6_band() {
  return {2.55e9, 10.08e6, 60e3, 3.0, 1148e-9, 1.19e-6};
}

inline BandParams default_mmwave_band() {
  return {25.5e9, 100.8e6, 60e3, 3.0, 841e-9, 1.19e-6};
}

inline std::vector<double> db_range(double first, double last, double step) {
  std::vector<double> out;
  const auto count = static_cast<int>(std::floor((last - first) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) out.push_back(first + step * i);
  return out;
}

/// All simulation parameters. Defaults reproduce the reference dual-band
/// setup (2.55 GHz / 25.5 GHz, 4x4 arrays at half a mmWave wavelength).
struct SystemConfig {
  BandParams sub6 = default_sub6_band();
  BandParams mmwave = default_mmwave_band();
  int m_tx = 4;
  int m_rx = 4;
  double element_spacing_m = 0.5 * kSpeedOfLight / 25.5e9;
  double link_distance_m = 10.0;
  std::vector<double> k_factor_mm_db_grid = db_range(-20.0, 30.0, 5.0);
  std::vector<double> snr_mm_db_grid = db_range(-15.0, 20.0, 5.0);
  int realizations = 1000;
  std::uint64_t seed = 1;
  double transmit_power = 1.0;
};

/// Number of subcarriers B / delta_f; must be integral to within 1e-6.
inline int subcarrier_count(const BandParams& band) {
  const double ratio = band.bandwidth_hz / band.subcarrier_spacing_hz;
  const double rounded = std::round(ratio);
  if (!(std::abs(ratio - rounded) <= 1e-6) || rounded < 1.0) {
    throw ConfigError("bandwidth / subcarrier spacing is not a positive integer: " +
                      std::to_string(ratio));
  }
  return static_cast<int>(rounded);
}

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

inline void validate_band(const BandParams& b, const std::string& name) {
  require(std::isfinite(b.carrier_frequency_hz) && b.carrier_frequency_hz > 0,
          name + ".carrier_frequency_hz must be positive");
  require(std::isfinite(b.bandwidth_hz) && b.bandwidth_hz > 0, name + ".bandwidth_hz must be positive");
  require(std::isfinite(b.subcarrier_spacing_hz) && b.subcarrier_spacing_hz > 0,
          name + ".subcarrier_spacing_hz must be positive");
  require(std::isfinite(b.noise_figure_db), name + ".noise_figure_db must be finite");
  require(std::isfinite(b.rms_delay_spread_s) && b.rms_delay_spread_s > 0,
          name + ".rms_delay_spread_s must be positive");
  require(std::isfinite(b.cyclic_prefix_s) && b.cyclic_prefix_s > 0,
          name + ".cyclic_prefix_s must be positive");
  subcarrier_count(b);
}

}  // namespace detail

inline void validate(const SystemConfig& cfg) {
  detail::validate_band(cfg.sub6, "sub6");
  detail::validate_band(cfg.mmwave, "mmwave");
  detail::require(cfg.mmwave.carrier_frequency_hz > cfg.sub6.carrier_frequency_hz,
                  "mmwave carrier must lie above the sub6 carrier (alpha > 1)");
  detail::require(cfg.m_tx >= 1, "m_tx must be >= 1");
  detail::require(cfg.m_rx >= 1, "m_rx must be >= 1");
  detail::require(std::isfinite(cfg.element_spacing_m) && cfg.element_spacing_m > 0,
                  "element_spacing_m must be positive");
  detail::require(std::isfinite(cfg.link_distance_m) && cfg.link_distance_m > 0,
                  "link_distance_m must be positive");
  detail::require(!cfg.k_factor_mm_db_grid.empty(), "k_factor_mm_db_grid must not be empty");
  detail::require(!cfg.snr_mm_db_grid.empty(), "snr_mm_db_grid must not be empty");
  for (double v : cfg.k_factor_mm_db_grid) detail::require(std::isfinite(v), "non-finite K grid value");
  for (double v : cfg.snr_mm_db_grid) detail::require(std::isfinite(v), "non-finite SNR grid value");
  detail::require(cfg.realizations >= 1, "realizations must be >= 1");
  detail::require(std::isfinite(cfg.transmit_power) && cfg.transmit_power > 0,
                  "transmit_power must be positive");
  detail::require(subcarrier_count(cfg.sub6) >= cfg.m_tx && subcarrier_count(cfg.mmwave) >= cfg.m_tx,
                  "each band needs at least m_tx subcarriers for the pilot comb");
}

/// Quantities that follow from the configuration.
struct DerivedParams {
  double alpha = 0.0;  // squared carrier ratio, path-loss ratio mmWave / sub-6
  double beta = 0.0;   // bandwidth x noise-figure ratio mmWave / sub-6
  int n_sub6 = 0;
  int n_mm = 0;
  double lambda_s = 0.0;
  double lambda_m = 0.0;
};

inline DerivedParams derived_params(const SystemConfig& cfg) {
  validate(cfg);
  DerivedParams d;
  const double ratio = cfg.mmwave.carrier_frequency_hz / cfg.sub6.carrier_frequency_hz;
  d.alpha = ratio * ratio;
  d.beta = (cfg.mmwave.bandwidth_hz * db_to_linear(cfg.mmwave.noise_figure_db)) /
           (cfg.sub6.bandwidth_hz * db_to_linear(cfg.sub6.noise_figure_db));
  d.n_sub6 = subcarrier_count(cfg.sub6);
  d.n_mm = subcarrier_count(cfg.mmwave);
  d.lambda_s = cfg.sub6.wavelength_m();
  d.lambda_m = cfg.mmwave.wavelength_m();
  return d;
}

// ---------------------------------------------------------------------------
// Flat key = value configuration files.

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (trim(std::string_view(text).substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("invalid number for '" + key + "': '" + text + "'");
}

inline long long parse_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (trim(std::string_view(text).substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("invalid integer for '" + key + "': '" + text + "'");
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text.front() != '-') {
      const unsigned long long v = std::stoull(text, &used);
      if (trim(std::string_view(text).substr(used)).empty()) return v;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("invalid unsigned integer for '" + key + "': '" + text + "'");
}

inline std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto t = trim(item);
    if (t.empty()) throw ConfigError("empty element in list '" + key + "'");
    out.push_back(parse_real(key, t));
  }
  if (out.empty()) throw ConfigError("empty list for '" + key + "'");
  return out;
}

inline bool set_band_value(BandParams& band, std::string_view field, const std::string& key,
                           const std::string& value) {
  if (field == "carrier_frequency_hz") band.carrier_frequency_hz = parse_real(key, value);
  else if (field == "bandwidth_hz") band.bandwidth_hz = parse_real(key, value);
  else if (field == "subcarrier_spacing_hz") band.subcarrier_spacing_hz = parse_real(key, value);
  else if (field == "noise_figure_db") band.noise_figure_db = parse_real(key, value);
  else if (field == "rms_delay_spread_s") band.rms_delay_spread_s = parse_real(key, value);
  else if (field == "cyclic_prefix_s") band.cyclic_prefix_s = parse_real(key, value);
  else return false;
  return true;
}

}  // namespace detail

/// Assigns one configuration field by its key name (`sub6.<field>` and
/// `mmwave.<field>` address band parameters).
inline void set_config_value(SystemConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string value = detail::trim(raw);
  bool known = true;
  if (key.rfind("sub6.", 0) == 0) {
    known = detail::set_band_value(cfg.sub6, std::string_view(key).substr(5), key, value);
  } else if (key.rfind("mmwave.", 0) == 0) {
    known = detail::set_band_value(cfg.mmwave, std::string_view(key).substr(7), key, value);
  } else if (key == "m_tx") {
    cfg.m_tx = static_cast<int>(detail::parse_integer(key, value));
  } else if (key == "m_rx") {
    cfg.m_rx = static_cast<int>(detail::parse_integer(key, value));
  } else if (key == "element_spacing_m") {
    cfg.element_spacing_m = detail::parse_real(key, value);
  } else if (key == "link_distance_m") {
    cfg.link_distance_m = detail::parse_real(key, value);
  } else if (key == "k_factor_mm_db_grid") {
    cfg.k_factor_mm_db_grid = detail::parse_list(key, value);
  } else if (key == "snr_mm_db_grid") {
    cfg.snr_mm_db_grid = detail::parse_list(key, value);
  } else if (key == "realizations") {
    cfg.realizations = static_cast<int>(detail::parse_integer(key, value));
  } else if (key == "seed") {
    cfg.seed = detail::parse_u64(key, value);
  } else if (key == "transmit_power") {
    cfg.transmit_power = detail::parse_real(key, value);
  } else {
    known = false;
  }
  if (!known) throw ConfigError("unknown configuration key '" + key + "'");
}

/// Parses `key = value` lines on top of `base`. `#` starts a comment.
inline SystemConfig parse_config(std::istream& in, SystemConfig base = {}) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    set_config_value(base, detail::trim(std::string_view(text).substr(0, eq)),
                     std::string(std::string_view(text).substr(eq + 1)));
  }
  return base;
}

inline SystemConfig load_config(const std::string& path, SystemConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

}  // namespace oobce
