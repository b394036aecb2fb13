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
#include <cstring>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oobce/channel_model.hpp"
#include "oobce/fusion.hpp"
#include "oobce/link_eval.hpp"
#include "oobce/pipeline.hpp"
#include "oobce/training.hpp"

namespace oobce {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
};

namespace detail {

inline bool bit_equal(const ChannelTensor& a, const ChannelTensor& b) {
  if (!a.same_shape(b)) return false;
  for (int n = 0; n < a.subcarriers(); ++n) {
    if (std::memcmp(a[n].data(), b[n].data(), sizeof(cd) * static_cast<std::size_t>(a[n].size())) != 0) return false;
  }
  return true;
}

inline Eigen::MatrixXcd random_matrix(Rng& rng, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = complex_gaussian(rng, 1.0);
  return m;
}

}  // namespace detail

/// Fast numerical invariants of the whole chain (no Monte Carlo at scale).
/// Uses the array sizes and carriers of `cfg`; the ensemble power check runs
/// on a 16-subcarrier variant of it.
inline std::vector<CheckResult> run_invariant_suite(const SystemConfig& cfg) {
  std::vector<CheckResult> out;
  const auto ctx = make_context(cfg);
  Rng rng(substream_seed(cfg.seed, StreamDomain::validation, 0, 0.0, 0.0));
  const int m_rx = cfg.m_rx;
  const int m_tx = cfg.m_tx;

  {
    double worst_recon = 0.0;
    double worst_unitary = 0.0;
    double worst_power = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto h = detail::random_matrix(rng, m_rx, m_tx);
      const auto svd = compact_svd(h);
      const Eigen::MatrixXcd recon = svd.u * svd.s.cast<cd>().asDiagonal() * svd.v.adjoint();
      worst_recon = std::max(worst_recon, (recon - h).norm() / h.norm());
      const auto k = svd.s.size();
      const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(k, k);
      worst_unitary = std::max({worst_unitary, (svd.u.adjoint() * svd.u - eye).norm(),
                                (svd.v.adjoint() * svd.v - eye).norm()});
      const double p_t = cfg.transmit_power;
      const double power = (svd.v * std::sqrt(p_t / static_cast<double>(k))).squaredNorm();
      worst_power = std::max(worst_power, std::abs(power - p_t));
    }
    out.push_back({"svd reconstruction (relative Frobenius)", worst_recon <= 1e-10, worst_recon, 1e-10});
    out.push_back({"combiner/precoder semi-unitarity", worst_unitary <= 1e-10, worst_unitary, 1e-10});
    out.push_back({"total transmit power constraint", worst_power <= 1e-10, worst_power, 1e-10});
  }

  {
    ChannelTensor x(Band::mmwave, 8, m_rx, m_tx);
    for (auto& m : x) m = detail::random_matrix(rng, m_rx, m_tx);
    const auto y = phase_rotate(x, ctx.distances, ctx.derived.lambda_s, ctx.derived.lambda_m);
    double worst = 0.0;
    for (int n = 0; n < x.subcarriers(); ++n) {
      worst = std::max(worst, (y[n].cwiseAbs() - x[n].cwiseAbs()).cwiseAbs().maxCoeff());
    }
    out.push_back({"phase rotation preserves magnitude", worst <= 1e-12, worst, 1e-12});
  }

  {
    auto los_rng = rng;
    const auto est = run_estimation_pipeline(ctx, 200.0, 0.0, los_rng, {.noiseless_training = true});
    const double rel = std::sqrt(squared_error(est.h_hat_sub6, est.truth.h_mm)) /
                       std::sqrt(squared_error(est.truth.h_mm, ChannelTensor(Band::mmwave, est.truth.h_mm.subcarriers(),
                                                                              m_rx, m_tx)));
    out.push_back({"LOS translation identity (noiseless, K = 200 dB)", rel <= 1e-6, rel, 1e-6});
  }

  {
    ChannelTensor hs(Band::mmwave, 6, m_rx, m_tx), tm(Band::mmwave, 6, m_rx, m_tx), ht(Band::mmwave, 6, m_rx, m_tx);
    for (int n = 0; n < 6; ++n) {
      hs[n] = detail::random_matrix(rng, m_rx, m_tx);
      tm[n] = detail::random_matrix(rng, m_rx, m_tx);
      ht[n] = detail::random_matrix(rng, m_rx, m_tx);
    }
    const bool ok = detail::bit_equal(fuse(EstimationMethod::weighting, hs, tm, ht, 0.0),
                                      fuse(EstimationMethod::conventional, hs, tm, ht)) &&
                    detail::bit_equal(fuse(EstimationMethod::weighting, hs, tm, ht, 0.5),
                                      fuse(EstimationMethod::averaging, hs, tm, ht)) &&
                    detail::bit_equal(fuse(EstimationMethod::weighting, hs, tm, ht, 1.0),
                                      fuse(EstimationMethod::translating, hs, tm, ht));
    out.push_back({"fusion endpoints W in {0, 0.5, 1} bit-identical", ok, ok ? 0.0 : 1.0, 0.0});
  }

  {
    const Eigen::MatrixXcd flat = detail::random_matrix(rng, m_rx, m_tx);
    double worst = 0.0;
    for (int n_sub : {ctx.derived.n_sub6, ctx.derived.n_mm}) {
      const auto h = ChannelTensor::replicated(Band::mmwave, n_sub, flat);
      const auto plan = make_pilot_plan(n_sub, m_tx, rng, cfg.transmit_power);
      const auto est = ls_estimate(observe_training(h, plan, 0.0, rng), plan, Band::mmwave);
      for (int n = 0; n < n_sub; ++n) worst = std::max(worst, (est[n] - h[n]).norm());
    }
    out.push_back({"noiseless flat-channel LS recovery", worst <= 1e-10, worst, 1e-10});
  }

  {
    double worst = 0.0;
    for (double k_db = -40.0; k_db <= 60.0; k_db += 0.5) {
      for (double k : {db_to_linear(k_db), db_to_linear(k_db) / kMmToSub6KRatio}) {
        const auto a = rician_amplitudes(k);
        worst = std::max(worst, std::abs(a.los * a.los + a.scatter * a.scatter - 1.0));
      }
    }
    const auto a0 = rician_amplitudes(0.0);
    worst = std::max(worst, std::abs(a0.los * a0.los + a0.scatter * a0.scatter - 1.0));
    out.push_back({"A_fs^2 + A_rp^2 = 1", worst <= 1e-15, worst, 1e-15});
  }

  {
    bool exact = true;
    for (double snr_db : {-15.0, -5.0, 0.0, 10.0, 20.0}) {
      auto r = rng;
      const auto real = realize_channels(ctx, 10.0, snr_db, r);
      exact = exact && real.snr_sub6_linear == ctx.derived.alpha * ctx.derived.beta * real.snr_mm_linear;
    }
    out.push_back({"sub-6 SNR = alpha * beta * mmWave SNR", exact, exact ? 0.0 : 1.0, 0.0});
  }

  {
    SystemConfig small = cfg;
    small.sub6.bandwidth_hz = 16 * small.sub6.subcarrier_spacing_hz;
    small.mmwave.bandwidth_hz = 16 * small.mmwave.subcarrier_spacing_hz;
    const auto sctx = make_context(small, ctx.profile);
    constexpr int kDraws = 10000;
    double worst = 0.0;
    for (double k_db : {-30.0, 0.0}) {
      ChannelTensor acc_s(Band::sub6, 16, m_rx, m_tx), acc_m(Band::mmwave, 16, m_rx, m_tx);
      for (int l = 0; l < kDraws; ++l) {
        auto r = make_rng(cfg.seed, StreamDomain::validation, static_cast<std::uint64_t>(l) + 1, k_db, 0.0);
        const auto real = realize_channels(sctx, k_db, 0.0, r);
        for (int n = 0; n < 16; ++n) {
          acc_s[n] += real.h_sub6[n].cwiseAbs2().cast<cd>();
          acc_m[n] += real.h_mm[n].cwiseAbs2().cast<cd>();
        }
      }
      for (const auto* acc : {&acc_s, &acc_m}) {
        for (const auto& m : *acc) {
          const Eigen::ArrayXXd mean = m.real().array() / kDraws;
          worst = std::max({worst, mean.maxCoeff() - 1.0, 1.0 - mean.minCoeff()});
        }
      }
    }
    out.push_back({"ensemble channel power per entry = 1 (10^4 draws)", worst <= 0.05, worst, 0.05});
  }
  return out;
}

}  // namespace oobce
