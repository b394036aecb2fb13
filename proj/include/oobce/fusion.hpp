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

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "oobce/channel_tensor.hpp"
#include "oobce/config.hpp"
#include "oobce/geometry.hpp"

namespace oobce {

/// How the mmWave channel estimate used for precoding is formed.
enum class EstimationMethod {
  conventional,  // in-band mmWave estimate only
  perfect_csi,   // true channel (upper bound)
  translating,   // phase-rotated sub-6 estimate only
  averaging,     // equal-weight mix of both
  weighting,     // lookup-table weighted mix of both
};

inline constexpr std::array kAllMethods = {EstimationMethod::conventional, EstimationMethod::perfect_csi,
                                           EstimationMethod::translating, EstimationMethod::averaging,
                                           EstimationMethod::weighting};

inline std::string_view to_string(EstimationMethod m) {
  switch (m) {
    case EstimationMethod::conventional: return "conventional";
    case EstimationMethod::perfect_csi: return "perfect_csi";
    case EstimationMethod::translating: return "translating";
    case EstimationMethod::averaging: return "averaging";
    case EstimationMethod::weighting: return "weighting";
  }
  return "unknown";
}

inline EstimationMethod parse_method(std::string_view name) {
  for (auto m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown estimation method '" + std::string(name) + "'");
}

/// Elementwise exp(j 2 pi D xi) with xi = 1/lambda_s - 1/lambda_m. Moves the
/// line-of-sight phase of a sub-6 estimate onto the mmWave carrier.
inline Eigen::MatrixXcd rotation_factors(const DistanceMatrix& distances, double lambda_s, double lambda_m) {
  const double xi = 1.0 / lambda_s - 1.0 / lambda_m;
  const auto& d = distances.matrix();
  Eigen::MatrixXcd f(d.rows(), d.cols());
  for (Eigen::Index r = 0; r < d.rows(); ++r) {
    for (Eigen::Index t = 0; t < d.cols(); ++t) f(r, t) = std::polar(1.0, 2.0 * std::numbers::pi * d(r, t) * xi);
  }
  return f;
}

inline ChannelTensor phase_rotate(const ChannelTensor& h_sub6_flat, const DistanceMatrix& distances,
                                  double lambda_s, double lambda_m) {
  if (h_sub6_flat.rows() != distances.rows() || h_sub6_flat.cols() != distances.cols()) {
    throw std::invalid_argument("phase_rotate: estimate and distance matrix dimensions differ");
  }
  if (lambda_s == lambda_m) return h_sub6_flat;
  const Eigen::MatrixXcd f = rotation_factors(distances, lambda_s, lambda_m);
  ChannelTensor out = h_sub6_flat;
  for (auto& m : out) m = m.cwiseProduct(f);
  return out;
}

/// Convex mix w * a + (1 - w) * b. Averaging uses the same expression with
/// w = 0.5 so the two agree bit for bit.
inline ChannelTensor weighted_mix(const ChannelTensor& a, const ChannelTensor& b, double w) {
  if (!a.same_shape(b)) throw std::invalid_argument("weighted_mix: shape mismatch");
  ChannelTensor out = b;
  const double v = 1.0 - w;
  for (int n = 0; n < a.subcarriers(); ++n) out[n] = w * a[n] + v * b[n];
  return out;
}

/// Final mmWave estimate for `method`. `w` is the sub-6 weight and is
/// required for (and only for) weighting.
inline ChannelTensor fuse(EstimationMethod method, const ChannelTensor& h_hat_s, const ChannelTensor& h_tilde_m,
                          const ChannelTensor& h_true_m, std::optional<double> w = std::nullopt) {
  if (!h_hat_s.same_shape(h_tilde_m) || !h_hat_s.same_shape(h_true_m)) {
    throw std::invalid_argument("fuse: input tensors differ in shape");
  }
  if (method == EstimationMethod::weighting) {
    if (!w) throw ConfigError("fuse: weighting requires a weight");
    if (!(*w >= 0.0 && *w <= 1.0)) throw ConfigError("fuse: weight must lie in [0, 1]");
  } else if (w) {
    throw ConfigError("fuse: a weight is only meaningful for weighting");
  }
  switch (method) {
    case EstimationMethod::conventional: return h_tilde_m;
    case EstimationMethod::perfect_csi: return h_true_m;
    case EstimationMethod::translating: return h_hat_s;
    case EstimationMethod::averaging: return weighted_mix(h_hat_s, h_tilde_m, 0.5);
    case EstimationMethod::weighting: return weighted_mix(h_hat_s, h_tilde_m, *w);
  }
  throw std::logic_error("fuse: unhandled method");
}

}  // namespace oobce
