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
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "oobce/channel_tensor.hpp"

namespace oobce {

/// The SVD did not produce a usable decomposition (non-finite input or
/// output). Callers exclude the realization and count it.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-subcarrier SVD precoder/combiner with equal power loading.
///
/// combiner[n] holds the first `streams` left singular vectors of the
/// estimate, precoder[n] the matching right singular vectors, and every
/// stream gets stream_power = P_T / streams.
struct Precoding {
  int streams = 0;
  double stream_power = 0.0;
  std::vector<Eigen::MatrixXcd> combiner;
  std::vector<Eigen::MatrixXcd> precoder;
  std::vector<Eigen::VectorXd> singular_values;

  [[nodiscard]] int subcarriers() const { return static_cast<int>(precoder.size()); }
};

struct CompactSvd {
  Eigen::MatrixXcd u;
  Eigen::VectorXd s;
  Eigen::MatrixXcd v;
};

/// Thin SVD with descending singular values. Each right singular vector is
/// rotated so its largest-magnitude entry is real and positive (the left
/// vector gets the same rotation, leaving U S V^H unchanged).
inline CompactSvd compact_svd(const Eigen::MatrixXcd& h) {
  if (!h.allFinite()) throw NumericalError("compact_svd: non-finite matrix");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("compact_svd: decomposition failed");
  CompactSvd out{svd.matrixU(), svd.singularValues(), svd.matrixV()};
  if (!out.u.allFinite() || !out.v.allFinite() || !out.s.allFinite()) {
    throw NumericalError("compact_svd: non-finite result");
  }
  for (Eigen::Index i = 0; i < out.v.cols(); ++i) {
    Eigen::Index k = 0;
    out.v.col(i).cwiseAbs().maxCoeff(&k);
    const double mag = std::abs(out.v(k, i));
    if (mag == 0.0) continue;
    const std::complex<double> undo = std::conj(out.v(k, i)) / mag;
    out.v.col(i) *= undo;
    out.u.col(i) *= undo;
    out.v(k, i) = mag;
  }
  return out;
}

inline Precoding svd_precoding(const ChannelTensor& h_bar, double transmit_power) {
  if (h_bar.empty()) throw std::invalid_argument("svd_precoding: empty tensor");
  Precoding p;
  p.streams = std::min(h_bar.rows(), h_bar.cols());
  p.stream_power = transmit_power / p.streams;
  const auto n = static_cast<std::size_t>(h_bar.subcarriers());
  p.combiner.reserve(n);
  p.precoder.reserve(n);
  p.singular_values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Repeated matrices (band-flat estimates) reuse the previous result.
    if (i > 0 && h_bar[i] == h_bar[i - 1]) {
      p.combiner.push_back(p.combiner.back());
      p.precoder.push_back(p.precoder.back());
      p.singular_values.push_back(p.singular_values.back());
      continue;
    }
    auto svd = compact_svd(h_bar[i]);
    p.combiner.push_back(std::move(svd.u));
    p.precoder.push_back(std::move(svd.v));
    p.singular_values.push_back(std::move(svd.s));
  }
  return p;
}

/// G[n] = Q[n]^H H[n] F[n] P^(1/2): the effective stream-to-stream gains when
/// precoding designed on an estimate meets the true channel.
inline std::vector<Eigen::MatrixXcd> channel_gain(const Precoding& precoding, const ChannelTensor& h_true) {
  if (precoding.subcarriers() != h_true.subcarriers()) {
    throw std::invalid_argument("channel_gain: subcarrier count mismatch");
  }
  if (precoding.subcarriers() > 0 &&
      (precoding.combiner[0].rows() != h_true.rows() || precoding.precoder[0].rows() != h_true.cols())) {
    throw std::invalid_argument("channel_gain: antenna dimensions mismatch");
  }
  const double amp = std::sqrt(precoding.stream_power);
  std::vector<Eigen::MatrixXcd> g;
  g.reserve(static_cast<std::size_t>(h_true.subcarriers()));
  for (int n = 0; n < h_true.subcarriers(); ++n) {
    const auto sn = static_cast<std::size_t>(n);
    g.push_back(amp * (precoding.combiner[sn].adjoint() * h_true[sn] * precoding.precoder[sn]));
  }
  return g;
}

enum class SinrMode {
  aggregate,   // one SINR over all streams, one log2(1 + SINR) per subcarrier
  per_stream,  // diagnostic only: sum of per-stream log2(1 + SINR_mu)
};

inline double off_diagonal_energy(const Eigen::MatrixXcd& g) {
  double acc = 0.0;
  for (Eigen::Index nu = 0; nu < g.cols(); ++nu) {
    for (Eigen::Index mu = 0; mu < g.rows(); ++mu) {
      if (mu != nu) acc += std::norm(g(mu, nu));
    }
  }
  return acc;
}

/// Aggregate SINR of one subcarrier: diagonal gain energy over off-diagonal
/// energy plus noise_var * ||Q||_F^2.
inline double aggregate_sinr(const Eigen::MatrixXcd& g, double noise_var, const Eigen::MatrixXcd& combiner) {
  const double signal = g.diagonal().squaredNorm();
  const double interference = off_diagonal_energy(g);
  const double denom = interference + noise_var * combiner.squaredNorm();
  if (denom <= 0.0) return signal > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return signal / denom;
}

/// Spectral efficiency in bit/s/Hz averaged over subcarriers.
inline double spectral_efficiency(const std::vector<Eigen::MatrixXcd>& gains, double noise_var,
                                  const Precoding& precoding, SinrMode mode = SinrMode::aggregate) {
  if (gains.empty()) return 0.0;
  if (static_cast<int>(gains.size()) != precoding.subcarriers()) {
    throw std::invalid_argument("spectral_efficiency: gains and precoding differ in length");
  }
  double acc = 0.0;
  for (std::size_t n = 0; n < gains.size(); ++n) {
    const auto& g = gains[n];
    const auto& q = precoding.combiner[n];
    if (mode == SinrMode::aggregate) {
      acc += std::log2(1.0 + aggregate_sinr(g, noise_var, q));
      continue;
    }
    for (Eigen::Index mu = 0; mu < g.rows(); ++mu) {
      const double signal = std::norm(g(mu, mu));
      double interference = 0.0;
      for (Eigen::Index nu = 0; nu < g.cols(); ++nu) {
        if (nu != mu) interference += std::norm(g(mu, nu));
      }
      const double denom = interference + noise_var * q.col(mu).squaredNorm();
      acc += std::log2(1.0 + (denom > 0.0 ? signal / denom : 0.0));
    }
  }
  return acc / static_cast<double>(gains.size());
}

/// Convenience: precode on `h_bar`, evaluate on `h_true`.
inline double evaluate_se(const ChannelTensor& h_bar, const ChannelTensor& h_true, double noise_var,
                          double transmit_power, SinrMode mode = SinrMode::aggregate) {
  const auto precoding = svd_precoding(h_bar, transmit_power);
  return spectral_efficiency(channel_gain(precoding, h_true), noise_var, precoding, mode);
}

}  // namespace oobce
