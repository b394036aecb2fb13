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
#include <vector>

#include "oobce/parallel.hpp"
#include "oobce/pipeline.hpp"
#include "oobce/weight_table.hpp"

namespace oobce {

/// Mean channel estimation error of the weighted estimate as a function of
/// the sub-6 weight w. Per entry the error is |e0 - w d|^2 with
/// e0 = H - H_tilde_m and d = H_hat_s - H_tilde_m, so the sum over all
/// realizations, subcarriers and entries is a - 2 w b + w^2 c.
struct ErrorQuadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double count = 0.0;  // realizations x subcarriers

  void add(const ChannelTensor& h_true, const ChannelTensor& h_tilde_m, const ChannelTensor& h_hat_s) {
    for (int n = 0; n < h_true.subcarriers(); ++n) {
      const auto& h = h_true[n];
      const auto& tm = h_tilde_m[n];
      const auto& hs = h_hat_s[n];
      for (Eigen::Index t = 0; t < h.cols(); ++t) {
        for (Eigen::Index r = 0; r < h.rows(); ++r) {
          const cd e0 = h(r, t) - tm(r, t);
          const cd d = hs(r, t) - tm(r, t);
          a += std::norm(e0);
          b += (std::conj(e0) * d).real();
          c += std::norm(d);
        }
      }
    }
    count += h_true.subcarriers();
  }

  ErrorQuadratic& operator+=(const ErrorQuadratic& o) {
    a += o.a;
    b += o.b;
    c += o.c;
    count += o.count;
    return *this;
  }

  [[nodiscard]] double mean_error(double w) const { return (a - 2.0 * w * b + w * w * c) / count; }
};

/// {0, step, 2 step, ..., 1}; `step` must divide one.
inline std::vector<double> weight_candidates(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw ConfigError("weight step must lie in (0, 1]");
  const double k = std::round(1.0 / step);
  if (std::abs(k * step - 1.0) > 1e-9) throw ConfigError("weight step must divide 1 evenly");
  const auto n = static_cast<int>(k);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) out.push_back(static_cast<double>(i) / n);
  return out;
}

/// Grid argmin of the error; ties go to the smaller weight.
inline double optimal_weight(const ErrorQuadratic& q, const std::vector<double>& candidates) {
  double best_w = candidates.front();
  double best_e = q.mean_error(best_w);
  for (double w : candidates) {
    const double e = q.mean_error(w);
    if (e < best_e) {
      best_e = e;
      best_w = w;
    }
  }
  return best_w;
}

/// Error statistics for L realizations at one grid point, drawn from the
/// weight-table substreams. Per-realization partials are summed in index
/// order so the result does not depend on the worker count.
inline ErrorQuadratic collect_error_quadratic(const SimulationContext& ctx, double k_db, double snr_db, int realizations,
                                              unsigned parallelism) {
  std::vector<ErrorQuadratic> parts(static_cast<std::size_t>(realizations));
  parallel_for(parts.size(), parallelism, [&](std::size_t l) {
    auto rng = make_rng(ctx.cfg.seed, StreamDomain::weight_table, l, k_db, snr_db);
    const auto est = run_estimation_pipeline(ctx, k_db, snr_db, rng);
    parts[l].add(est.truth.h_mm, est.h_tilde_mm, est.h_hat_sub6);
  });
  ErrorQuadratic total;
  for (const auto& p : parts) total += p;
  return total;
}

/// Lookup table of MSE-optimal sub-6 weights. Every candidate weight is
/// scored on the same realizations of its grid point.
inline WeightTable build_weight_table(const SimulationContext& ctx, const std::vector<double>& k_grid_db,
                                      const std::vector<double>& snr_grid_db, double w_step, int realizations,
                                      unsigned parallelism = 1) {
  if (k_grid_db.empty() || snr_grid_db.empty()) throw ConfigError("weight table grids must not be empty");
  if (realizations < 1) throw ConfigError("weight table needs at least one realization");
  const auto candidates = weight_candidates(w_step);
  WeightTable table(k_grid_db, snr_grid_db);
  for (std::size_t ki = 0; ki < k_grid_db.size(); ++ki) {
    for (std::size_t si = 0; si < snr_grid_db.size(); ++si) {
      const auto q = collect_error_quadratic(ctx, k_grid_db[ki], snr_grid_db[si], realizations, parallelism);
      table.set(ki, si, optimal_weight(q, candidates));
    }
  }
  return table;
}

}  // namespace oobce
