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

#include <Eigen/Dense>

#include "oobce/config.hpp"

namespace oobce {

/// Element-pair distances in meters, row r = receive element, column t =
/// transmit element. Shared by both bands since the arrays are co-located.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(Eigen::MatrixXd meters) : d_(std::move(meters)) {}

  [[nodiscard]] int rows() const { return static_cast<int>(d_.rows()); }
  [[nodiscard]] int cols() const { return static_cast<int>(d_.cols()); }
  [[nodiscard]] double operator()(int r, int t) const { return d_(r, t); }
  [[nodiscard]] const Eigen::MatrixXd& matrix() const { return d_; }

 private:
  Eigen::MatrixXd d_;
};

/// Two parallel broadside ULAs facing each other at boresight distance d,
/// both centered on the boresight axis. With equal array sizes element k of
/// either array sits at k * spacing from that array's first element.
inline DistanceMatrix build_distance_matrix(const SystemConfig& cfg) {
  if (cfg.m_tx < 1 || cfg.m_rx < 1) throw ConfigError("array sizes must be >= 1");
  if (!(cfg.link_distance_m > 0)) throw ConfigError("link_distance_m must be positive");
  const double d = cfg.link_distance_m;
  // offsets in units of the spacing; doubled to stay integral for odd sizes
  const auto position2 = [](int k, int m) { return 2 * k - (m - 1); };
  Eigen::MatrixXd out(cfg.m_rx, cfg.m_tx);
  for (int r = 0; r < cfg.m_rx; ++r) {
    for (int t = 0; t < cfg.m_tx; ++t) {
      const double offset = 0.5 * (position2(r, cfg.m_rx) - position2(t, cfg.m_tx)) * cfg.element_spacing_m;
      out(r, t) = std::sqrt(d * d + offset * offset);
    }
  }
  return DistanceMatrix(std::move(out));
}

}  // namespace oobce
