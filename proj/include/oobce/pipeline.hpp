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

#include "oobce/channel_model.hpp"
#include "oobce/fusion.hpp"
#include "oobce/training.hpp"

namespace oobce {

struct PipelineOptions {
  bool noiseless_training = false;
};

/// Truth plus the two estimates every method is built from.
struct LinkEstimates {
  ChannelRealization truth;
  ChannelTensor h_tilde_sub6;  // LS estimate, sub-6 band
  ChannelTensor h_tilde_mm;    // LS estimate, mmWave band
  ChannelTensor h_hat_sub6;    // averaged, extrapolated and phase-rotated sub-6 estimate
};

/// One realization end to end: channels, training in both bands, then the
/// band-average extrapolation and phase rotation of the sub-6 estimate.
/// Random draws happen in a fixed order, independent of which methods are
/// evaluated afterwards.
inline LinkEstimates run_estimation_pipeline(const SimulationContext& ctx, double k_mm_db, double snr_mm_db, Rng& rng,
                                             PipelineOptions options = {}) {
  LinkEstimates out;
  out.truth = realize_channels(ctx, k_mm_db, snr_mm_db, rng);
  const double p_t = ctx.cfg.transmit_power;
  const double nv_s = options.noiseless_training ? 0.0 : out.truth.noise_var_sub6;
  const double nv_m = options.noiseless_training ? 0.0 : out.truth.noise_var_mm;

  const auto plan_s = make_pilot_plan(ctx.derived.n_sub6, ctx.cfg.m_tx, rng, p_t);
  out.h_tilde_sub6 = ls_estimate(observe_training(out.truth.h_sub6, plan_s, nv_s, rng), plan_s, Band::sub6);

  const auto plan_m = make_pilot_plan(ctx.derived.n_mm, ctx.cfg.m_tx, rng, p_t);
  out.h_tilde_mm = ls_estimate(observe_training(out.truth.h_mm, plan_m, nv_m, rng), plan_m, Band::mmwave);

  out.h_hat_sub6 = phase_rotate(band_average_extrapolate(out.h_tilde_sub6, ctx.derived.n_mm), ctx.distances,
                                ctx.derived.lambda_s, ctx.derived.lambda_m);
  return out;
}

}  // namespace oobce
