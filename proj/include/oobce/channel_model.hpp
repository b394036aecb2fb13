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
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "oobce/channel_tensor.hpp"
#include "oobce/config.hpp"
#include "oobce/geometry.hpp"
#include "oobce/rng.hpp"
#include "oobce/tdl_profile.hpp"

namespace oobce {

/// Deterministic line-of-sight matrix exp(-j 2 pi D / lambda), elementwise.
inline Eigen::MatrixXcd free_space_channel(const DistanceMatrix& distances, double wavelength_m) {
  const auto& d = distances.matrix();
  Eigen::MatrixXcd h(d.rows(), d.cols());
  const double k = 2.0 * std::numbers::pi / wavelength_m;
  for (Eigen::Index r = 0; r < d.rows(); ++r) {
    for (Eigen::Index t = 0; t < d.cols(); ++t) h(r, t) = std::polar(1.0, -k * d(r, t));
  }
  return h;
}

/// Frequency response of an uncorrelated Rayleigh TDL channel. Every antenna
/// pair draws its own tap gains; per-entry average power is one.
inline ChannelTensor rayleigh_tdl_tensor(const TdlProfile& profile, double ds_seconds, int n_subcarriers,
                                         double delta_f_hz, int m_rx, int m_tx, Band band, Rng& rng) {
  if (profile.tap_count() == 0) throw ConfigError("rayleigh_tdl_tensor: empty TDL profile");
  if (!(ds_seconds > 0)) throw ConfigError("rayleigh_tdl_tensor: delay spread must be positive");
  const auto taps = static_cast<Eigen::Index>(profile.tap_count());
  const auto powers = profile.linear_powers();

  // phase[n, p] = exp(-j 2 pi n delta_f tau_p)
  Eigen::MatrixXcd phase(n_subcarriers, taps);
  for (Eigen::Index p = 0; p < taps; ++p) {
    const double tau = profile.normalized_delays[static_cast<std::size_t>(p)] * ds_seconds;
    for (int n = 0; n < n_subcarriers; ++n) {
      phase(n, p) = std::polar(1.0, -2.0 * std::numbers::pi * n * delta_f_hz * tau);
    }
  }

  // gains column (r, t) holds the tap amplitudes of that antenna pair
  Eigen::MatrixXcd gains(taps, m_rx * m_tx);
  for (int r = 0; r < m_rx; ++r) {
    for (int t = 0; t < m_tx; ++t) {
      for (Eigen::Index p = 0; p < taps; ++p) {
        gains(p, r * m_tx + t) = complex_gaussian(rng, powers[static_cast<std::size_t>(p)]);
      }
    }
  }
  const Eigen::MatrixXcd response = phase * gains;  // n x (r, t)

  ChannelTensor h(band, n_subcarriers, m_rx, m_tx);
  for (int n = 0; n < n_subcarriers; ++n) {
    for (int r = 0; r < m_rx; ++r) {
      for (int t = 0; t < m_tx; ++t) h[n](r, t) = response(n, r * m_tx + t);
    }
  }
  return h;
}

/// Rician split of unit channel power into LOS and scattered amplitudes.
struct RicianAmplitudes {
  double los = 0.0;
  double scatter = 1.0;
};

inline RicianAmplitudes rician_amplitudes(double k_linear) {
  return {std::sqrt(k_linear / (1.0 + k_linear)), std::sqrt(1.0 / (1.0 + k_linear))};
}

/// The mmWave K-factor is ten times the sub-6 one.
inline constexpr double kMmToSub6KRatio = 10.0;

/// Everything that stays fixed across realizations of one configuration.
struct SimulationContext {
  SystemConfig cfg;
  DerivedParams derived;
  DistanceMatrix distances;
  TdlProfile profile;
  Eigen::MatrixXcd free_space_sub6;
  Eigen::MatrixXcd free_space_mm;
};

inline SimulationContext make_context(const SystemConfig& cfg, TdlProfile profile = tdl_a()) {
  SimulationContext ctx;
  ctx.cfg = cfg;
  ctx.derived = derived_params(cfg);
  ctx.distances = build_distance_matrix(cfg);
  ctx.profile = std::move(profile);
  ctx.free_space_sub6 = free_space_channel(ctx.distances, ctx.derived.lambda_s);
  ctx.free_space_mm = free_space_channel(ctx.distances, ctx.derived.lambda_m);
  return ctx;
}

/// True channels of both bands for one realization plus the noise levels
/// implied by the requested mmWave SNR. Path loss is normalized out, so SNR
/// differences live entirely in the noise variances.
struct ChannelRealization {
  ChannelTensor h_sub6;
  ChannelTensor h_mm;
  double k_mm_linear = 0.0;
  double snr_mm_linear = 0.0;
  double snr_sub6_linear = 0.0;  // alpha * beta * snr_mm_linear
  double noise_var_sub6 = 0.0;
  double noise_var_mm = 0.0;
};

namespace detail {

inline ChannelTensor rician_band(const SimulationContext& ctx, const BandParams& band_params, Band band,
                                 const Eigen::MatrixXcd& free_space, double k_linear, Rng& rng) {
  const int n = subcarrier_count(band_params);
  ChannelTensor h = rayleigh_tdl_tensor(ctx.profile, band_params.rms_delay_spread_s, n,
                                        band_params.subcarrier_spacing_hz, ctx.cfg.m_rx, ctx.cfg.m_tx, band, rng);
  const auto a = rician_amplitudes(k_linear);
  for (auto& m : h) m = a.los * free_space + a.scatter * m;
  return h;
}

}  // namespace detail

/// Draws both bands from one stream: sub-6 scattering first, then mmWave.
/// The two bands' scattered parts are independent.
inline ChannelRealization realize_channels(const SimulationContext& ctx, double k_mm_db, double snr_mm_db,
                                           Rng& rng) {
  if (!std::isfinite(k_mm_db) || !std::isfinite(snr_mm_db)) {
    throw ConfigError("realize_channels: K and SNR must be finite");
  }
  ChannelRealization out;
  out.k_mm_linear = db_to_linear(k_mm_db);
  const double k_sub6 = out.k_mm_linear / kMmToSub6KRatio;
  out.h_sub6 = detail::rician_band(ctx, ctx.cfg.sub6, Band::sub6, ctx.free_space_sub6, k_sub6, rng);
  out.h_mm = detail::rician_band(ctx, ctx.cfg.mmwave, Band::mmwave, ctx.free_space_mm, out.k_mm_linear, rng);

  out.snr_mm_linear = db_to_linear(snr_mm_db);
  out.snr_sub6_linear = ctx.derived.alpha * ctx.derived.beta * out.snr_mm_linear;
  out.noise_var_mm = ctx.cfg.transmit_power / out.snr_mm_linear;
  out.noise_var_sub6 = ctx.cfg.transmit_power / out.snr_sub6_linear;
  return out;
}

inline ChannelRealization realize_channels(const SystemConfig& cfg, double k_mm_db, double snr_mm_db, Rng& rng) {
  return realize_channels(make_context(cfg), k_mm_db, snr_mm_db, rng);
}

}  // namespace oobce
