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
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oobce/config.hpp"

namespace oobce {

/// Sub-6 weight W(K, SNR) on an exact (K dB, SNR dB) grid. Off-grid lookups
/// are errors; nothing is interpolated.
class WeightTable {
 public:
  static constexpr double kGridTolerance = 1e-9;

  WeightTable() = default;
  WeightTable(std::vector<double> k_grid_db, std::vector<double> snr_grid_db)
      : k_(std::move(k_grid_db)), snr_(std::move(snr_grid_db)), w_(k_.size() * snr_.size(), 0.0) {}

  [[nodiscard]] const std::vector<double>& k_grid_db() const { return k_; }
  [[nodiscard]] const std::vector<double>& snr_grid_db() const { return snr_; }

  [[nodiscard]] double at(std::size_t ki, std::size_t si) const { return w_.at(ki * snr_.size() + si); }

  void set(std::size_t ki, std::size_t si, double w) {
    if (!(w >= 0.0 && w <= 1.0)) throw ConfigError("weight outside [0, 1]");
    w_.at(ki * snr_.size() + si) = w;
  }

  [[nodiscard]] std::optional<double> find(double k_db, double snr_db) const {
    const auto ki = index_of(k_, k_db);
    const auto si = index_of(snr_, snr_db);
    if (!ki || !si) return std::nullopt;
    return at(*ki, *si);
  }

  [[nodiscard]] double lookup(double k_db, double snr_db) const {
    if (auto w = find(k_db, snr_db)) return *w;
    throw ConfigError("weight table has no entry for K = " + std::to_string(k_db) +
                      " dB, SNR = " + std::to_string(snr_db) + " dB");
  }

 private:
  static std::optional<std::size_t> index_of(const std::vector<double>& grid, double v) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (std::abs(grid[i] - v) <= kGridTolerance) return i;
    }
    return std::nullopt;
  }

  std::vector<double> k_;
  std::vector<double> snr_;
  std::vector<double> w_;
};

inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);  // no "-0.00"
  return s;
}

/// Decimal places needed to print multiples of `w_step` exactly (at least 2).
inline int weight_decimals(double w_step) {
  int d = 2;
  while (d < 9 && std::abs(w_step * std::pow(10.0, d) - std::round(w_step * std::pow(10.0, d))) > 1e-9) ++d;
  return d;
}

/// CSV in lookup-table layout: the header row lists SNR (dB), the first
/// column K (dB), the body holds W.
inline void write_weight_table_csv(std::ostream& out, const WeightTable& t, int decimals = 2) {
  out << "K_dB\\SNR_dB";
  for (double s : t.snr_grid_db()) out << ',' << format_fixed(s, 2);
  out << '\n';
  for (std::size_t ki = 0; ki < t.k_grid_db().size(); ++ki) {
    out << format_fixed(t.k_grid_db()[ki], 2);
    for (std::size_t si = 0; si < t.snr_grid_db().size(); ++si) out << ',' << format_fixed(t.at(ki, si), decimals);
    out << '\n';
  }
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(detail::trim(cell));
  return cells;
}

inline WeightTable read_weight_table_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("weight table: missing header row");
  const auto header = split_csv_line(line);
  if (header.size() < 2) throw ConfigError("weight table: header needs at least one SNR column");
  std::vector<double> snr;
  for (std::size_t i = 1; i < header.size(); ++i) snr.push_back(detail::parse_real("snr", header[i]));
  std::vector<double> k;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw ConfigError("weight table: ragged row");
    k.push_back(detail::parse_real("k", cells[0]));
    std::vector<double> row;
    for (std::size_t i = 1; i < cells.size(); ++i) row.push_back(detail::parse_real("w", cells[i]));
    rows.push_back(std::move(row));
  }
  if (k.empty()) throw ConfigError("weight table: no rows");
  WeightTable t(k, snr);
  for (std::size_t ki = 0; ki < rows.size(); ++ki) {
    for (std::size_t si = 0; si < snr.size(); ++si) t.set(ki, si, rows[ki][si]);
  }
  return t;
}

inline void save_weight_table(const std::string& path, const WeightTable& t, int decimals = 2) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write weight table '" + path + "'");
  write_weight_table_csv(out, t, decimals);
  if (!out) throw IoError("error while writing weight table '" + path + "'");
}

inline WeightTable load_weight_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open weight table '" + path + "'");
  return read_weight_table_csv(in);
}

}  // namespace oobce
