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
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "oobce/channel_tensor.hpp"
#include "oobce/rng.hpp"

namespace oobce {

/// Comb pilot allocation for one band. Subcarrier n (0-based) is owned by
/// transmit antenna n mod m_tx, which sends pilot_symbols[n]; every other
/// antenna is silent there.
struct PilotPlan {
  int n_subcarriers = 0;
  int m_tx = 0;
  std::vector<std::complex<double>> pilot_symbols;
  std::vector<int> owner;

  /// Subcarriers owned by antenna t, ascending.
  [[nodiscard]] std::vector<int> pilots_of(int t) const {
    std::vector<int> out;
    for (int n = t; n < n_subcarriers; n += m_tx) out.push_back(n);
    return out;
  }
};

/// 4-QAM pilots with |phi|^2 = transmit_power on the occupied subcarrier.
inline PilotPlan make_pilot_plan(int n_subcarriers, int m_tx, Rng& rng, double transmit_power = 1.0) {
  if (m_tx < 1) throw std::invalid_argument("make_pilot_plan: m_tx must be >= 1");
  if (n_subcarriers < m_tx) throw std::invalid_argument("make_pilot_plan: fewer subcarriers than transmit antennas");
  PilotPlan plan;
  plan.n_subcarriers = n_subcarriers;
  plan.m_tx = m_tx;
  plan.pilot_symbols.reserve(static_cast<std::size_t>(n_subcarriers));
  plan.owner.reserve(static_cast<std::size_t>(n_subcarriers));
  std::uniform_int_distribution<int> quadrant(0, 3);
  const double amplitude = std::sqrt(transmit_power);
  for (int n = 0; n < n_subcarriers; ++n) {
    plan.owner.push_back(n % m_tx);
    const double angle = std::numbers::pi / 4.0 * (2 * quadrant(rng) + 1);
    plan.pilot_symbols.push_back(std::polar(amplitude, angle));
  }
  return plan;
}

using Observations = std::vector<Eigen::VectorXcd>;

/// y[n] = H[n] phi[n] + w[n] with w ~ CN(0, noise_var I).
inline Observations observe_training(const ChannelTensor& h, const PilotPlan& plan, double noise_var, Rng& rng) {
  if (h.subcarriers() != plan.n_subcarriers || h.cols() != plan.m_tx) {
    throw std::invalid_argument("observe_training: pilot plan does not match channel dimensions");
  }
  Observations y;
  y.reserve(static_cast<std::size_t>(plan.n_subcarriers));
  for (int n = 0; n < plan.n_subcarriers; ++n) {
    const auto sn = static_cast<std::size_t>(n);
    Eigen::VectorXcd v = h[sn].col(plan.owner[sn]) * plan.pilot_symbols[sn];
    for (Eigen::Index r = 0; r < v.size(); ++r) {
      if (noise_var > 0.0) v(r) += complex_gaussian(rng, noise_var);
    }
    y.push_back(std::move(v));
  }
  return y;
}

/// Least-squares estimates at each antenna's pilots, complex-linear
/// interpolation between them and nearest-pilot hold outside the comb.
inline ChannelTensor ls_estimate(const Observations& y, const PilotPlan& plan, Band band) {
  if (static_cast<int>(y.size()) != plan.n_subcarriers) {
    throw std::invalid_argument("ls_estimate: observation count does not match pilot plan");
  }
  const int m_rx = y.empty() ? 0 : static_cast<int>(y.front().size());
  ChannelTensor est(band, plan.n_subcarriers, m_rx, plan.m_tx);
  const int step = plan.m_tx;
  for (int t = 0; t < plan.m_tx; ++t) {
    const auto pilots = plan.pilots_of(t);
    std::vector<Eigen::VectorXcd> ls;
    ls.reserve(pilots.size());
    for (int p : pilots) {
      const auto sp = static_cast<std::size_t>(p);
      ls.push_back(y[sp] / plan.pilot_symbols[sp]);
    }
    const int first = pilots.front();
    const int last = pilots.back();
    for (int n = 0; n < plan.n_subcarriers; ++n) {
      auto col = est[static_cast<std::size_t>(n)].col(t);
      if (n <= first) {
        col = ls.front();
      } else if (n >= last) {
        col = ls.back();
      } else {
        const int k = (n - first) / step;
        const double a = static_cast<double>(n - pilots[static_cast<std::size_t>(k)]) / step;
        if (a == 0.0) {
          col = ls[static_cast<std::size_t>(k)];
        } else {
          col = (1.0 - a) * ls[static_cast<std::size_t>(k)] + a * ls[static_cast<std::size_t>(k) + 1];
        }
      }
    }
  }
  return est;
}

/// Mean over subcarriers, replicated across the n_mm subcarriers of the
/// mmWave band.
inline ChannelTensor band_average_extrapolate(const ChannelTensor& h_est_sub6, int n_mm) {
  if (h_est_sub6.empty()) throw std::invalid_argument("band_average_extrapolate: empty input");
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(h_est_sub6.rows(), h_est_sub6.cols());
  for (const auto& m : h_est_sub6) sum += m;
  const Eigen::MatrixXcd mean = sum / static_cast<double>(h_est_sub6.subcarriers());
  return ChannelTensor::replicated(Band::mmwave, n_mm, mean);
}

}  // namespace oobce
